#include "confmodel/random_variates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace confmodel {

namespace {

__extension__ typedef unsigned __int128 u128;

// Stirling series for log Gamma(w), accurate to ~1e-16 relative for w >= 1e6.
double stirling_correction(double w) {
  const double w2 = w * w;
  return 1.0 / (12.0 * w) - 1.0 / (360.0 * w * w2);
}

std::uint64_t urn_count(std::uint64_t marked, std::uint64_t population,
                        std::uint64_t draws, Rng& rng) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < draws && marked > 0; ++i) {
    if (uniform_below(rng, population) < marked) {
      ++hits;
      --marked;
    }
    --population;
  }
  return hits;
}

// Ratio-of-uniforms sampler. Preconditions: good <= bad, sample <= pop / 2,
// sample >= 1, good >= 1.
std::uint64_t hypergeometric_hrua(std::uint64_t good, std::uint64_t bad,
                                  std::uint64_t sample, Rng& rng) {
  constexpr double kD1 = 1.7155277699214135;
  constexpr double kD2 = 0.8989161620588988;

  const std::uint64_t pop = good + bad;
  const double popd = static_cast<double>(pop);
  const double p = static_cast<double>(good) / popd;
  const double q = static_cast<double>(bad) / popd;
  const double samp = static_cast<double>(sample);

  const double mu = samp * p;
  const double a = mu + 0.5;
  const double var = (popd - samp) * samp * p * q / (popd - 1.0);
  const double c = std::sqrt(var + 0.5);
  const double h = kD1 * c + kD2;

  const auto m = static_cast<std::uint64_t>(
      std::floor((samp + 1.0) * (static_cast<double>(good) + 1.0) / (popd + 2.0)));
  const double upper = std::min(
      static_cast<double>(std::min(sample, good)) + 1.0, std::floor(a + 16.0 * c));

  const std::uint64_t tail = bad - sample;  // bad >= pop/2 >= sample
  for (;;) {
    const double u = uniform01(rng);
    const double v = uniform01(rng);
    if (u <= 0.0) continue;
    const double x = a + h * (v - 0.5) / u;
    if (x < 0.0 || x >= upper) continue;
    const auto k = static_cast<std::uint64_t>(std::floor(x));

    // log f(k) - log f(m) for the hypergeometric pmf f.
    const double t = log_factorial_diff(m, k) + log_factorial_diff(good - m, good - k) +
                     log_factorial_diff(sample - m, sample - k) +
                     log_factorial_diff(tail + m, tail + k);
    if (u * (4.0 - u) - 3.0 <= t) return k;
    if (u * (u - t) >= 1.0) continue;
    if (2.0 * std::log(u) <= t) return k;
  }
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  u128 product = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double log_factorial_diff(std::uint64_t x, std::uint64_t y) {
  if (x == y) return 0.0;
  if (x < y) return -log_factorial_diff(y, x);
  const std::uint64_t d = x - y;
  if (d <= 16) {
    double acc = 0.0;
    for (std::uint64_t v = y + 1; v <= x; ++v) acc += std::log(static_cast<double>(v));
    return acc;
  }
  if (y < 1000000) {
    return std::lgamma(static_cast<double>(x) + 1.0) - std::lgamma(static_cast<double>(y) + 1.0);
  }
  // log Gamma(wx) - log Gamma(wy) with wx = x + 1, wy = y + 1, arranged so that
  // no term of size |log Gamma| is ever formed.
  const double wy = static_cast<double>(y) + 1.0;
  const double wx = static_cast<double>(x) + 1.0;
  const double dd = static_cast<double>(d);
  const double log_ratio = std::log1p(dd / wy);
  return (wy - 0.5) * log_ratio + dd * std::log(wx) - dd + stirling_correction(wx) -
         stirling_correction(wy);
}

std::uint64_t sample_hypergeometric(std::uint64_t good, std::uint64_t bad,
                                    std::uint64_t sample, Rng& rng) {
  if (good > std::numeric_limits<std::uint64_t>::max() - bad)
    throw std::overflow_error("sample_hypergeometric: population overflows");
  const std::uint64_t pop = good + bad;
  if (sample > pop) throw std::invalid_argument("sample_hypergeometric: sample exceeds population");
  if (sample == 0 || good == 0) return 0;
  if (bad == 0) return sample;
  if (sample == pop) return good;
  if (good > bad) return sample - sample_hypergeometric(bad, good, sample, rng);
  if (sample > pop - sample) return good - sample_hypergeometric(good, bad, pop - sample, rng);

  const std::uint64_t small = std::min(good, sample);
  if (small <= 16) {
    // Symmetry: #good in the sample has the same law as #sampled among the goods.
    return urn_count(std::max(good, sample), pop, small, rng);
  }
  return hypergeometric_hrua(good, bad, sample, rng);
}

std::uint64_t sample_unimodal_by_ratio(std::uint64_t lo, std::uint64_t hi,
                                       const std::function<double(std::uint64_t)>& ratio,
                                       Rng& rng) {
  if (lo > hi) throw std::invalid_argument("sample_unimodal_by_ratio: empty support");
  if (lo == hi) return lo;

  // First s with ratio(s) < 1 is the mode; hi if the pmf increases throughout.
  std::uint64_t left = lo;
  std::uint64_t right = hi;
  while (left < right) {
    const std::uint64_t mid = left + (right - left) / 2;
    if (ratio(mid) < 1.0) right = mid;
    else left = mid + 1;
  }
  const std::uint64_t mode = left;

  constexpr double kNegligible = 1e-18;
  auto walk_right = [&](double budget, double* total) -> std::uint64_t {
    double w = 1.0;
    double acc = 0.0;
    for (std::uint64_t s = mode; s < hi;) {
      w *= ratio(s);
      ++s;
      if (w < kNegligible) break;
      acc += w;
      if (acc >= budget) return s;
    }
    if (total) *total = acc;
    return hi + 1;
  };
  auto walk_left = [&](double budget, double* total) -> std::uint64_t {
    double w = 1.0;
    double acc = 0.0;
    for (std::uint64_t s = mode; s > lo;) {
      --s;
      w /= ratio(s);
      if (w < kNegligible) break;
      acc += w;
      if (acc >= budget) return s;
    }
    if (total) *total = acc;
    return hi + 1;
  };

  const double inf = std::numeric_limits<double>::infinity();
  double right_mass = 0.0;
  double left_mass = 0.0;
  walk_right(inf, &right_mass);
  walk_left(inf, &left_mass);

  double u = uniform01(rng) * (1.0 + right_mass + left_mass);
  if (u < 1.0) return mode;
  u -= 1.0;
  if (u < right_mass) {
    const std::uint64_t s = walk_right(u, nullptr);
    return s > hi ? mode : s;
  }
  u -= right_mass;
  const std::uint64_t s = walk_left(u, nullptr);
  return s > hi ? mode : s;
}

}  // namespace confmodel
