#include "confmodel/degree_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace confmodel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTolerance = 1e-12;
constexpr std::size_t kMaxOffspringHead = std::size_t{1} << 20;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double pareto_alpha(const ParetoTailFamily& p) { return p.tau - 1.0; }

double pareto_at_least(const ParetoTailFamily& p, double k) {
  if (k <= static_cast<double>(p.k_min)) return 1.0;
  return std::exp(pareto_alpha(p) * std::log(static_cast<double>(p.k_min) / k));
}

double pareto_pmf(const ParetoTailFamily& p, Degree k) {
  if (k < p.k_min) return 0.0;
  const double kd = static_cast<double>(k);
  // P(D >= k) * (1 - (k / (k+1))^alpha), written to avoid cancellation.
  return pareto_at_least(p, kd) * -std::expm1(pareto_alpha(p) * std::log1p(-1.0 / (kd + 1.0)));
}

// sum_{i >= from} P(D >= i) for from > k_min.
double pareto_survival_sum(const ParetoTailFamily& p, Degree from) {
  const double alpha = pareto_alpha(p);
  const double c = std::pow(static_cast<double>(p.k_min), alpha);
  return power_tail_sum(c, alpha, from);
}

// sum_{j >= from} j f_j for from > k_min.
double pareto_first_moment_tail(const ParetoTailFamily& p, Degree from) {
  return static_cast<double>(from - 1) * pareto_at_least(p, static_cast<double>(from)) +
         pareto_survival_sum(p, from);
}

}  // namespace

double power_tail_sum(double c, double alpha, Degree from) {
  if (!(alpha > 1.0)) throw std::domain_error("power_tail_sum: alpha must exceed 1");
  if (from < 1) throw std::domain_error("power_tail_sum: summation must start at k >= 1");
  constexpr Degree kDirectTerms = 4000;
  double direct = 0.0;
  const Degree cut = from + kDirectTerms;
  // Summed from the small end so the largest terms are added last.
  for (Degree k = cut - 1; k >= from; --k) {
    direct += std::pow(static_cast<double>(k), -alpha);
    if (k == from) break;
  }
  // Euler-Maclaurin remainder for sum_{k >= cut} k^-alpha.
  const double kk = static_cast<double>(cut);
  const double a = alpha;
  const double base = std::pow(kk, -a);
  double remainder = kk * base / (a - 1.0) + 0.5 * base + a * base / (12.0 * kk) -
                     a * (a + 1.0) * (a + 2.0) * base / (720.0 * kk * kk * kk) +
                     a * (a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0) * base /
                         (30240.0 * kk * kk * kk * kk * kk);
  return c * (direct + remainder);
}

DegreeLaw DegreeLaw::explicit_pmf(std::map<Degree, double> pmf) {
  if (pmf.empty()) throw std::invalid_argument("explicit law: empty pmf");
  double total = 0.0;
  for (const auto& [k, p] : pmf) {
    if (k < 1) throw std::invalid_argument("explicit law: support points must be >= 1");
    if (!(p >= 0.0)) throw std::invalid_argument("explicit law: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "explicit law: probabilities sum to " << total;
    throw std::invalid_argument(msg.str());
  }
  std::erase_if(pmf, [](const auto& kv) { return kv.second == 0.0; });
  return DegreeLaw(ExplicitFamily{std::move(pmf)});
}

DegreeLaw DegreeLaw::pareto_tail(double tau, Degree k_min) {
  if (!(tau > 1.0)) throw std::invalid_argument("pareto law: tau must exceed 1");
  if (k_min < 1) throw std::invalid_argument("pareto law: k_min must be >= 1");
  return DegreeLaw(ParetoTailFamily{tau, k_min});
}

DegreeLaw DegreeLaw::degenerate(Degree m) {
  if (m < 1) throw std::invalid_argument("degenerate law: m must be >= 1");
  return DegreeLaw(DegenerateFamily{m});
}

DegreeLaw DegreeLaw::parse_explicit(const std::string& text) {
  std::map<Degree, double> pmf;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("explicit law: expected k:p, got '" + item + "'");
    std::size_t used = 0;
    const std::string key = item.substr(0, colon);
    const std::string value = item.substr(colon + 1);
    const long long k = std::stoll(key, &used);
    if (used != key.size() || k < 1)
      throw std::invalid_argument("explicit law: bad degree '" + key + "'");
    const double p = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("explicit law: bad probability '" + value + "'");
    if (!pmf.emplace(static_cast<Degree>(k), p).second)
      throw std::invalid_argument("explicit law: duplicate degree " + key);
  }
  return explicit_pmf(std::move(pmf));
}

Degree DegreeLaw::min_degree() const {
  return std::visit(Overloaded{
                        [](const ExplicitFamily& e) { return e.pmf.begin()->first; },
                        [](const ParetoTailFamily& p) { return p.k_min; },
                        [](const DegenerateFamily& d) { return d.m; },
                    },
                    family_);
}

std::string DegreeLaw::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const ExplicitFamily& e) {
                   out << "explicit(";
                   bool first = true;
                   for (const auto& [k, p] : e.pmf) {
                     out << (first ? "" : ",") << k << ':' << p;
                     first = false;
                   }
                   out << ')';
                 },
                 [&](const ParetoTailFamily& p) {
                   out << "pareto(tau=" << p.tau << ",kmin=" << p.k_min << ')';
                 },
                 [&](const DegenerateFamily& d) { out << "degenerate(m=" << d.m << ')'; },
             },
             family_);
  return out.str();
}

double pmf(const DegreeLaw& law, Degree k) {
  return std::visit(Overloaded{
                        [k](const ExplicitFamily& e) {
                          const auto it = e.pmf.find(k);
                          return it == e.pmf.end() ? 0.0 : it->second;
                        },
                        [k](const ParetoTailFamily& p) { return pareto_pmf(p, k); },
                        [k](const DegenerateFamily& d) { return k == d.m ? 1.0 : 0.0; },
                    },
                    law.family());
}

double tail_at_least(const DegreeLaw& law, Degree k) {
  return std::visit(Overloaded{
                        [k](const ExplicitFamily& e) {
                          double acc = 0.0;
                          for (auto it = e.pmf.lower_bound(k); it != e.pmf.end(); ++it)
                            acc += it->second;
                          return std::min(acc, 1.0);
                        },
                        [k](const ParetoTailFamily& p) {
                          return pareto_at_least(p, static_cast<double>(k));
                        },
                        [k](const DegenerateFamily& d) { return k <= d.m ? 1.0 : 0.0; },
                    },
                    law.family());
}

double tail(const DegreeLaw& law, double x) {
  if (x < 0.0) throw std::domain_error("tail: x must be >= 0");
  const double next = std::floor(x) + 1.0;
  if (law.is_pareto()) return pareto_at_least(std::get<ParetoTailFamily>(law.family()), next);
  if (next > static_cast<double>(std::numeric_limits<Degree>::max() / 2)) return 0.0;
  return tail_at_least(law, static_cast<Degree>(next));
}

LawMoments moments(const DegreeLaw& law) {
  LawMoments out{};
  out.f1 = pmf(law, 1);
  out.f2 = pmf(law, 2);
  out.min_degree = law.min_degree();
  std::visit(Overloaded{
                 [&](const ExplicitFamily& e) {
                   double first = 0.0;
                   double falling = 0.0;
                   for (const auto& [k, p] : e.pmf) {
                     const double kd = static_cast<double>(k);
                     first += kd * p;
                     falling += kd * (kd - 1.0) * p;
                   }
                   out.mu = first;
                   out.nu = falling / first;
                 },
                 [&](const ParetoTailFamily& p) {
                   const double alpha = pareto_alpha(p);
                   const double kmin = static_cast<double>(p.k_min);
                   if (alpha <= 1.0) {
                     out.mu = kInf;
                     out.nu = kInf;
                     return;
                   }
                   // mu = sum_{k >= 1} P(D >= k).
                   out.mu = kmin + pareto_survival_sum(p, p.k_min + 1);
                   if (alpha <= 2.0) {
                     out.nu = kInf;
                     return;
                   }
                   // E[D(D-1)] = sum_{k >= 1} 2 (k - 1) P(D >= k).
                   const double c = std::pow(kmin, alpha);
                   const double weighted = power_tail_sum(c, alpha - 1.0, p.k_min + 1);
                   const double plain = pareto_survival_sum(p, p.k_min + 1);
                   out.nu = (kmin * (kmin - 1.0) + 2.0 * (weighted - plain)) / out.mu;
                 },
                 [&](const DegenerateFamily& d) {
                   out.mu = static_cast<double>(d.m);
                   out.nu = static_cast<double>(d.m) - 1.0;
                 },
             },
             law.family());
  return out;
}

OffspringLaw size_biased_law(const DegreeLaw& law) {
  const LawMoments mom = moments(law);
  if (!std::isfinite(mom.mu))
    throw std::domain_error("size_biased_law: infinite mean degree, size-biased law undefined");

  return std::visit(
      Overloaded{
          [&](const ExplicitFamily& e) {
            std::map<std::size_t, double> g;
            for (const auto& [k, p] : e.pmf)
              g[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p / mom.mu;
            return OffspringLaw::from_pmf(g);
          },
          [&](const ParetoTailFamily& p) {
            // Tail of g beyond K is sum_{j >= K+2} j f_j / mu, known in closed form.
            auto tail_beyond = [&](std::size_t head_last) {
              return pareto_first_moment_tail(p, static_cast<Degree>(head_last) + 2) / mom.mu;
            };
            std::size_t last = std::max<std::size_t>(64, static_cast<std::size_t>(p.k_min));
            while (last < kMaxOffspringHead && tail_beyond(last) > kMassTolerance) last *= 2;
            std::vector<double> head(last + 1);
            for (std::size_t k = 0; k <= last; ++k)
              head[k] = static_cast<double>(k + 1) * pareto_pmf(p, k + 1) / mom.mu;
            return OffspringLaw(std::move(head), tail_beyond(last), mom.nu);
          },
          [&](const DegenerateFamily& d) {
            return OffspringLaw::from_pmf({{static_cast<std::size_t>(d.m - 1), 1.0}});
          },
      },
      law.family());
}

DegreeSampler::DegreeSampler(const DegreeLaw& law) : law_(law) {
  if (const auto* e = std::get_if<ExplicitFamily>(&law.family())) {
    double acc = 0.0;
    for (const auto& [k, p] : e->pmf) {
      acc += p;
      support_.push_back(k);
      cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
  }
}

Degree DegreeSampler::operator()(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&](const ExplicitFamily&) {
            const double u = uniform01(rng);
            const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
            return support_[static_cast<std::size_t>(it - cumulative_.begin())];
          },
          [&](const ParetoTailFamily& p) {
            const double u = 1.0 - uniform01(rng);  // (0, 1]
            const double x = static_cast<double>(p.k_min) * std::exp(-std::log(u) / pareto_alpha(p));
            if (!(x < static_cast<double>(kMaxSampledDegree))) return kMaxSampledDegree;
            return std::max(p.k_min, static_cast<Degree>(std::floor(x)));
          },
          [](const DegenerateFamily& d) { return d.m; },
      },
      law_.family());
}

Degree sample_degree(const DegreeLaw& law, Rng& rng) { return DegreeSampler(law)(rng); }

DegreeSequence sample_degrees(const DegreeLaw& law, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_degrees: n must be >= 1");
  Rng rng(seed);
  const DegreeSampler draw(law);
  DegreeSequence seq;
  seq.degrees.resize(n);
  for (auto& d : seq.degrees) d = draw(rng);
  return seq;
}

}  // namespace confmodel
