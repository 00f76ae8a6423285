#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "confmodel/random_variates.hpp"

namespace confmodel {

/// Offspring distribution on {0, 1, 2, ...}.
///
/// Stored as an explicit head `pmf[0..K]` plus the exact mass `tail_mass` that
/// lies strictly above K. Finite laws have `tail_mass == 0`. Laws derived from
/// heavy-tailed degree distributions keep a head long enough that the tail is
/// either below 1e-12 or irrelevant for generating-function evaluation at
/// arguments bounded away from 1.
class OffspringLaw {
 public:
  OffspringLaw(std::vector<double> head, double tail_mass, double mean);

  /// Finite law from a k -> p mapping; the mean is computed.
  static OffspringLaw from_pmf(const std::map<std::size_t, double>& pmf);

  double probability(std::size_t k) const { return k < head_.size() ? head_[k] : 0.0; }
  const std::vector<double>& head() const { return head_; }
  double tail_mass() const { return tail_mass_; }
  double mean() const { return mean_; }
  bool finite_support() const { return tail_mass_ == 0.0; }

  /// Generating function sum_k p_k s^k for s in [0, 1]. The tail mass is
  /// placed at K+1, so the truncation error is at most tail_mass * s^(K+1).
  double pgf(double s) const;
  /// Derivative of the generating function; tail contribution handled as in pgf.
  double pgf_derivative(double s) const;

 private:
  std::vector<double> head_;
  double tail_mass_;
  double mean_;
};

/// Inversion sampler over an OffspringLaw. Draws that land in the tail return
/// head().size(), the smallest value the tail can take.
class OffspringSampler {
 public:
  explicit OffspringSampler(const OffspringLaw& law);
  std::size_t operator()(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
  std::size_t constant_ = 0;
  bool deterministic_ = false;
};

}  // namespace confmodel
