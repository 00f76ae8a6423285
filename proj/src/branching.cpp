#include "confmodel/branching.hpp"

#include <cmath>
#include <stdexcept>

namespace confmodel {

namespace {
constexpr double kStepTolerance = 1e-13;
constexpr long kMaxIterations = 1000000;
}  // namespace

double extinction_probability(const OffspringLaw& g) {
  if (g.mean() <= 1.0) return 1.0;
  // G(s) - s is convex with G(0) - 0 >= 0, so Newton steps started below the
  // smallest root increase monotonically towards it. Plain iteration would
  // crawl when the mean is barely above 1.
  double s = 0.0;
  for (long it = 0; it < kMaxIterations; ++it) {
    const double slope = g.pgf_derivative(s) - 1.0;
    const double gap = g.pgf(s) - s;
    double next = slope < 0.0 ? s - gap / slope : g.pgf(s);
    if (!(next <= 1.0)) next = 1.0;
    if (!(next >= s)) return s;
    if (next - s < kStepTolerance) return next;
    s = next;
  }
  throw std::runtime_error("extinction_probability: fixed-point iteration did not converge");
}

DelayedBranching delayed_survival(const DegreeLaw& f) {
  const LawMoments mom = moments(f);
  if (!std::isfinite(mom.mu)) return DelayedBranching{f, std::nullopt, 0.0, 1.0};

  OffspringLaw g = size_biased_law(f);
  const double eta = extinction_probability(g);
  // q = 1 - G_f(eta), evaluated from f directly.
  double extinct = 1.0;
  if (eta < 1.0) {
    extinct = 0.0;
    if (const auto* e = std::get_if<ExplicitFamily>(&f.family())) {
      for (const auto& [k, p] : e->pmf) extinct += p * std::pow(eta, static_cast<double>(k));
    } else if (const auto* d = std::get_if<DegenerateFamily>(&f.family())) {
      extinct = std::pow(eta, static_cast<double>(d->m));
    } else {
      double power = std::pow(eta, static_cast<double>(f.min_degree()));
      for (Degree k = f.min_degree(); power > 1e-18; ++k) {
        extinct += pmf(f, k) * power;
        power *= eta;
      }
    }
  }
  return DelayedBranching{f, std::move(g), eta, 1.0 - extinct};
}

OffspringLaw conditioned_on_extinction_law(const OffspringLaw& g, double eta_g) {
  if (!(eta_g > 0.0 && eta_g <= 1.0))
    throw std::invalid_argument("conditioned_on_extinction_law: eta must lie in (0, 1]; "
                                "conditioning on a null event");
  const auto& head = g.head();
  std::vector<double> conditioned(head.size(), 0.0);
  double power = 1.0;  // eta^(n-1)
  double mass = 0.0;
  double mean = 0.0;
  for (std::size_t n = 1; n < head.size(); ++n) {
    conditioned[n] = power * head[n];
    mass += conditioned[n];
    mean += static_cast<double>(n) * conditioned[n];
    power *= eta_g;
  }
  // Tail mass sits above K = head.size() - 1, where eta^(n-1) <= eta^K.
  const double tail = g.tail_mass() * power;
  mass += tail;
  mean += tail * static_cast<double>(head.size());
  conditioned[0] = std::max(0.0, 1.0 - mass);
  const double norm = conditioned[0] + mass;
  if (norm != 1.0) {
    for (double& p : conditioned) p /= norm;
    return OffspringLaw(std::move(conditioned), tail / norm, mean / norm);
  }
  return OffspringLaw(std::move(conditioned), tail, mean);
}

std::optional<std::uint64_t> simulate_total_progeny(const DelayedBranching& bp, std::uint64_t cap,
                                                    std::uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("simulate_total_progeny: cap must be >= 1");
  if (!bp.later_gen) throw std::invalid_argument("simulate_total_progeny: later generations undefined");
  Rng rng(seed);
  const DegreeSampler first(bp.first_gen);
  const OffspringSampler later(*bp.later_gen);

  const std::uint64_t children = first(rng);
  if (children >= cap) return std::nullopt;
  std::uint64_t total = 1 + children;
  std::uint64_t alive = children;
  while (alive > 0) {
    if (total > cap) return std::nullopt;
    const std::uint64_t c = later(rng);
    --alive;
    if (c > cap) return std::nullopt;
    alive += c;
    total += c;
  }
  if (total > cap) return std::nullopt;
  return total;
}

}  // namespace confmodel
