#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace confmodel {

/// Generator used throughout the library. Every sampling routine takes one
/// explicitly; there is no global generator.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Number of "good" items in a uniform sample of `sample` items drawn without
/// replacement from `good + bad` items.
///
/// Small cases are simulated draw by draw; otherwise the ratio-of-uniforms
/// rejection sampler (H2PE/HRUA family) is used. Log-factorial differences are
/// evaluated in a cancellation-free form so populations up to ~1e18 keep their
/// accuracy.
std::uint64_t sample_hypergeometric(std::uint64_t good, std::uint64_t bad,
                                    std::uint64_t sample, Rng& rng);

/// log(x!) - log(y!) without forming either term for large arguments.
double log_factorial_diff(std::uint64_t x, std::uint64_t y);

/// Draws from a unimodal discrete law on [lo, hi] given only the successive
/// probability ratio p(s+1)/p(s). The mode is located by bisection on the
/// ratio (which must be non-increasing), and mass is accumulated outward from
/// the mode until it is negligible.
std::uint64_t sample_unimodal_by_ratio(
    std::uint64_t lo, std::uint64_t hi,
    const std::function<double(std::uint64_t)>& ratio, Rng& rng);

}  // namespace confmodel
