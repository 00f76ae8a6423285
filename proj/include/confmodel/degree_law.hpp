#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "confmodel/degree_sequence.hpp"
#include "confmodel/offspring_law.hpp"
#include "confmodel/random_variates.hpp"

namespace confmodel {

using Degree = std::uint64_t;

/// Finite-support pmf k -> f_k on k >= 1.
struct ExplicitFamily {
  std::map<Degree, double> pmf;
};

/// Integer Pareto tail: P(D >= k) = (k_min / k)^(tau - 1) for k >= k_min.
struct ParetoTailFamily {
  double tau;
  Degree k_min;
};

/// Point mass at m.
struct DegenerateFamily {
  Degree m;
};

class DegreeLaw {
 public:
  using Family = std::variant<ExplicitFamily, ParetoTailFamily, DegenerateFamily>;

  static DegreeLaw explicit_pmf(std::map<Degree, double> pmf);
  static DegreeLaw pareto_tail(double tau, Degree k_min);
  static DegreeLaw degenerate(Degree m);

  /// Parses "1:0.5,3:0.5".
  static DegreeLaw parse_explicit(const std::string& text);

  const Family& family() const { return family_; }
  bool is_pareto() const { return std::holds_alternative<ParetoTailFamily>(family_); }
  Degree min_degree() const;
  std::string describe() const;

 private:
  explicit DegreeLaw(Family family) : family_(std::move(family)) {}
  Family family_;
};

/// Moments of a degree law. Infinite values are +infinity, never a large
/// finite stand-in.
struct LawMoments {
  double mu;
  double nu;
  double f1;
  double f2;
  Degree min_degree;
};

/// P(D = k); zero off the support.
double pmf(const DegreeLaw& law, Degree k);

/// P(D >= k).
double tail_at_least(const DegreeLaw& law, Degree k);

/// 1 - F(x) = P(D > x).
double tail(const DegreeLaw& law, double x);

LawMoments moments(const DegreeLaw& law);

/// g_k = (k + 1) f_{k+1} / mu. Throws std::domain_error when mu is infinite.
OffspringLaw size_biased_law(const DegreeLaw& law);

/// Largest degree the Pareto sampler returns; keeps L_N representable.
inline constexpr Degree kMaxSampledDegree = Degree{1} << 56;

/// Draws i.i.d. degrees. Pareto draws use exact integer inversion
/// floor(k_min * U^(-1/(tau-1))), saturated at kMaxSampledDegree; explicit
/// laws invert a cached CDF.
class DegreeSampler {
 public:
  explicit DegreeSampler(const DegreeLaw& law);
  Degree operator()(Rng& rng) const;

 private:
  DegreeLaw law_;
  std::vector<double> cumulative_;
  std::vector<Degree> support_;
};

Degree sample_degree(const DegreeLaw& law, Rng& rng);

/// n i.i.d. draws; deterministic in (law, n, seed).
DegreeSequence sample_degrees(const DegreeLaw& law, std::size_t n, std::uint64_t seed);

/// sum_{k >= from} c * k^(-alpha), alpha > 1, via direct summation of a
/// prefix and an Euler-Maclaurin remainder.
double power_tail_sum(double c, double alpha, Degree from);

}  // namespace confmodel
