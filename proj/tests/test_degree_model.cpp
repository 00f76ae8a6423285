#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "confmodel/degree_law.hpp"

using namespace confmodel;

namespace {

const DegreeLaw kThirds = DegreeLaw::explicit_pmf({{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}});
const DegreeLaw kHalfOneThree = DegreeLaw::explicit_pmf({{1, 0.5}, {3, 0.5}});

double ks_distance(const DegreeLaw& law, std::vector<Degree> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  std::size_t i = 0;
  double cdf = 0.0;
  for (Degree k = 1; k <= sample.back(); ++k) {
    while (i < sample.size() && sample[i] <= k) ++i;
    cdf += pmf(law, k);
    worst = std::max(worst, std::abs(static_cast<double>(i) / n - cdf));
  }
  return worst;
}

}  // namespace

TEST_CASE("pmf values") {
  CHECK(pmf(kThirds, 2) == doctest::Approx(1.0 / 3));
  CHECK(pmf(DegreeLaw::degenerate(3), 2) == 0.0);
  CHECK(pmf(DegreeLaw::degenerate(3), 3) == 1.0);
  CHECK(pmf(DegreeLaw::pareto_tail(3.0, 1), 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pmf(DegreeLaw::pareto_tail(3.0, 4), 2) == 0.0);
  CHECK(pmf(kThirds, 9) == 0.0);
}

TEST_CASE("tail values") {
  CHECK(tail(DegreeLaw::pareto_tail(3.0, 1), 2.0) == doctest::Approx(1.0 / 9).epsilon(1e-15));
  CHECK(tail(kThirds, 0.0) == 1.0);
  CHECK(tail(DegreeLaw::pareto_tail(2.5, 3), 0.0) == 1.0);
  CHECK(tail(DegreeLaw::degenerate(3), 3.0) == 0.0);
  CHECK(tail(DegreeLaw::degenerate(3), 2.5) == 1.0);
  CHECK(tail(kThirds, 1.5) == doctest::Approx(2.0 / 3));
}

TEST_CASE("moments of the reference laws") {
  const LawMoments t = moments(kThirds);
  CHECK(t.mu == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t.nu == doctest::Approx(4.0 / 3).epsilon(1e-14));
  CHECK(t.f1 == doctest::Approx(1.0 / 3));
  CHECK(t.f2 == doctest::Approx(1.0 / 3));

  const LawMoments basel = moments(DegreeLaw::pareto_tail(3.0, 1));
  CHECK(std::abs(basel.mu - std::numbers::pi * std::numbers::pi / 6) < 1e-11);
  CHECK(std::isinf(basel.nu));

  const LawMoments d = moments(DegreeLaw::degenerate(3));
  CHECK(d.mu == 3.0);
  CHECK(d.nu == 2.0);
  CHECK(d.min_degree == 3);

  const LawMoments heavy = moments(DegreeLaw::pareto_tail(1.5, 1));
  CHECK(std::isinf(heavy.mu));
  CHECK(std::isinf(heavy.nu));
}

TEST_CASE("Pareto moments agree with independent summation") {
  for (double tau : {2.2, 2.5, 3.5, 4.5}) {
    for (Degree kmin : {1, 3, 7}) {
      const LawMoments m = moments(DegreeLaw::pareto_tail(tau, kmin));
      const double mu = test_oracle::pareto_mean(tau, static_cast<double>(kmin));
      CHECK(std::abs(m.mu - mu) <= 1e-10 * mu);
      CHECK(m.mu >= static_cast<double>(kmin));
      if (tau > 3.0) {
        const double nu = test_oracle::pareto_factorial_moment(tau, static_cast<double>(kmin)) / mu;
        CHECK(std::abs(m.nu - nu) <= 1e-9 * nu);
      } else {
        CHECK(std::isinf(m.nu));
      }
    }
  }
}

TEST_CASE("size-biased law examples") {
  const OffspringLaw g = size_biased_law(kThirds);
  CHECK(g.probability(0) == doctest::Approx(1.0 / 6));
  CHECK(g.probability(1) == doctest::Approx(1.0 / 3));
  CHECK(g.probability(2) == doctest::Approx(0.5));
  CHECK(g.probability(3) == 0.0);

  const OffspringLaw h = size_biased_law(kHalfOneThree);
  CHECK(h.probability(0) == doctest::Approx(0.25));
  CHECK(h.probability(1) == 0.0);
  CHECK(h.probability(2) == doctest::Approx(0.75));

  const OffspringLaw d = size_biased_law(DegreeLaw::degenerate(3));
  CHECK(d.probability(2) == 1.0);
  CHECK(d.mean() == 2.0);

  CHECK_THROWS_AS(size_biased_law(DegreeLaw::pareto_tail(1.5, 1)), std::domain_error);
}

TEST_CASE("size-biased law: total mass 1 and mean nu") {
  const std::vector<DegreeLaw> finite = {
      kThirds, kHalfOneThree, DegreeLaw::degenerate(1), DegreeLaw::degenerate(5),
      DegreeLaw::explicit_pmf({{1, 0.1}, {2, 0.2}, {4, 0.3}, {9, 0.4}}),
      DegreeLaw::explicit_pmf({{2, 0.5}, {3, 0.5}})};
  for (const DegreeLaw& law : finite) {
    const OffspringLaw g = size_biased_law(law);
    double mass = 0.0;
    double mean = 0.0;
    for (std::size_t k = 0; k < g.head().size(); ++k) {
      mass += g.head()[k];
      mean += static_cast<double>(k) * g.head()[k];
    }
    CHECK(g.tail_mass() == 0.0);
    CHECK(std::abs(mass - 1.0) < 1e-12);
    CHECK(std::abs(mean - moments(law).nu) < 1e-9);
  }

  // Heavy-tailed laws keep a truncated head; the first moment carried by the
  // tail is added back from an independent summation.
  for (double tau : {3.5, 4.5, 6.0}) {
    for (Degree kmin : {1, 3}) {
      const DegreeLaw law = DegreeLaw::pareto_tail(tau, kmin);
      const OffspringLaw g = size_biased_law(law);
      const double K = static_cast<double>(g.head().size() - 1);
      double mass = g.tail_mass();
      double mean = 0.0;
      for (std::size_t k = g.head().size(); k-- > 0;) {
        mass += g.head()[k];
        mean += static_cast<double>(k) * g.head()[k];
      }
      const double mu = test_oracle::pareto_mean(tau, static_cast<double>(kmin));
      const double tail_moment = test_oracle::pareto_factorial_tail(tau, static_cast<double>(kmin), K + 2.0) / mu;
      CHECK(std::abs(mass - 1.0) < 1e-12);
      CHECK(std::abs(mean + tail_moment - moments(law).nu) < 1e-9);
      CHECK(g.mean() == doctest::Approx(moments(law).nu).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampling is deterministic and exact for Pareto tails") {
  const DegreeSequence d = sample_degrees(DegreeLaw::degenerate(3), 5, 17);
  CHECK(d.degrees == std::vector<Degree>{3, 3, 3, 3, 3});

  const DegreeLaw pareto = DegreeLaw::pareto_tail(2.5, 3);
  CHECK(sample_degrees(pareto, 1000, 5).degrees == sample_degrees(pareto, 1000, 5).degrees);
  CHECK(sample_degrees(pareto, 1000, 5).degrees != sample_degrees(pareto, 1000, 6).degrees);

  const std::size_t n = 100000;
  const DegreeSequence s = sample_degrees(pareto, n, 2024);
  const double hits = static_cast<double>(std::count_if(s.degrees.begin(), s.degrees.end(), [](Degree k) { return k >= 6; }));
  const double p = std::pow(0.5, 1.5);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
  CHECK(std::abs(hits / static_cast<double>(n) - p) < 3 * se);
  CHECK(*std::min_element(s.degrees.begin(), s.degrees.end()) == 3);

  CHECK_THROWS(sample_degrees(pareto, 0, 1));
}

TEST_CASE("Pareto tail envelope on the integer grid") {
  for (double tau : {1.5, 2.5, 3.5}) {
    for (Degree kmin : {1, 2, 5}) {
      const DegreeLaw law = DegreeLaw::pareto_tail(tau, kmin);
      const double a = tau - 1.0;
      const double c = std::pow(static_cast<double>(kmin) / 2.0, a);
      const double c_hi = std::pow(static_cast<double>(kmin), a);
      for (double x = static_cast<double>(kmin); x <= 1e6; x = std::ceil(x * 1.07)) {
        const double t = tail(law, x);
        const double scale = std::pow(x, -a);
        CHECK(t >= c * scale * (1 - 1e-12));
        CHECK(t <= c_hi * scale * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("Kolmogorov-Smirnov distance below 0.01 at n = 1e5") {
  const std::vector<DegreeLaw> laws = {kThirds, kHalfOneThree, DegreeLaw::degenerate(4),
                                       DegreeLaw::pareto_tail(2.5, 3), DegreeLaw::pareto_tail(1.5, 1)};
  std::uint64_t seed = 100;
  for (const DegreeLaw& law : laws) {
    const DegreeSequence s = sample_degrees(law, 100000, seed++);
    std::vector<Degree> sample = s.degrees;
    // The unbounded tail is checked up to a cutoff; beyond it the empirical
    // and true CDFs both sit above 1 - P(D > cutoff).
    const Degree cutoff = 200000;
    for (Degree& k : sample) k = std::min(k, cutoff);
    CHECK(ks_distance(law, sample) < 0.01);
  }
}

TEST_CASE("law validation") {
  CHECK_THROWS(DegreeLaw::explicit_pmf({{1, 0.5}, {2, 0.4}}));
  CHECK_THROWS(DegreeLaw::explicit_pmf({{0, 0.5}, {2, 0.5}}));
  CHECK_THROWS(DegreeLaw::explicit_pmf({{1, -0.5}, {2, 1.5}}));
  CHECK_THROWS(DegreeLaw::pareto_tail(1.0, 1));
  CHECK_THROWS(DegreeLaw::pareto_tail(2.5, 0));
  CHECK_THROWS(DegreeLaw::degenerate(0));
  const DegreeLaw parsed = DegreeLaw::parse_explicit("1:0.5,3:0.5");
  CHECK(pmf(parsed, 3) == 0.5);
  CHECK_THROWS(DegreeLaw::parse_explicit("1:0.5,3"));
}
