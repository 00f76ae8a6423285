#pragma once

#include <cstdint>
#include <optional>

#include "confmodel/degree_law.hpp"
#include "confmodel/offspring_law.hpp"

namespace confmodel {

/// Root offspring ~ first_gen, every later individual ~ later_gen. For
/// infinite-mean degree laws later_gen is absent and q = 1.
struct DelayedBranching {
  DegreeLaw first_gen;
  std::optional<OffspringLaw> later_gen;
  double eta_g = 1.0;
  double q = 0.0;
};

/// Smallest fixed point of the generating function on [0, 1], by monotone
/// iteration from 0 until the step is below 1e-13. Returns 1 when the mean is
/// at most 1. Throws std::runtime_error if 10^6 iterations do not converge.
double extinction_probability(const OffspringLaw& g);

DelayedBranching delayed_survival(const DegreeLaw& f);

/// g*_n = eta^(n-1) g_n for n >= 1, with g*_0 taking the remaining mass.
/// Throws std::invalid_argument unless 0 < eta <= 1.
OffspringLaw conditioned_on_extinction_law(const OffspringLaw& g, double eta_g);

/// Total progeny of one delayed process, or nullopt once more than `cap`
/// individuals have been born.
std::optional<std::uint64_t> simulate_total_progeny(const DelayedBranching& bp, std::uint64_t cap,
                                                    std::uint64_t seed);

}  // namespace confmodel
