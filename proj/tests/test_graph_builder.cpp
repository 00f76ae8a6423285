#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "confmodel/components.hpp"
#include "confmodel/graph_builder.hpp"

using namespace confmodel;

namespace {

DegreeSequence seq(std::vector<Degree> d) { return DegreeSequence{std::move(d)}; }

// Pearson test of empirical graph frequencies against the enumerated law.
double graph_law_pvalue(const std::vector<Degree>& degrees, bool aggregated, int seeds) {
  const auto law = test_oracle::exact_graph_law(degrees);
  std::map<test_oracle::GraphKey, double> seen;
  for (int s = 0; s < seeds; ++s) {
    const Multigraph g = aggregated ? build_aggregated(seq(degrees), s) : build(seq(degrees), s);
    seen[test_oracle::key_of(g)] += 1;
  }
  std::vector<double> obs, probs;
  for (const auto& [key, p] : law) {
    obs.push_back(seen.count(key) ? seen[key] : 0.0);
    probs.push_back(p);
  }
  REQUIRE(seen.size() <= law.size());
  if (law.size() == 1) return 1.0;
  return test_oracle::chi_square_pvalue(test_oracle::chi_square(obs, probs), static_cast<double>(law.size() - 1));
}

std::vector<std::size_t> sorted_sizes(const Multigraph& g) { return component_summary(g).sizes; }

}  // namespace

TEST_CASE("small builds") {
  const Multigraph edge = build(seq({1, 1}), 9);
  REQUIRE(edge.edges().size() == 1);
  CHECK(edge.edges()[0].u == 0);
  CHECK(edge.edges()[0].v == 1);
  CHECK(count_self_loops(edge) == 0);

  const Multigraph loop = build(seq({2}), 1);
  CHECK(loop.stub_count() == 2);
  CHECK(count_self_loops(loop) == 1);
  CHECK_FALSE(loop.padded());

  const Multigraph odd = build(seq({3}), 1);
  CHECK(odd.padded());
  CHECK(odd.stub_count() == 4);
  CHECK(odd.degree(0) == 4);
  CHECK(count_self_loops(odd) == 2);

  CHECK_THROWS(build(seq({}), 1));
  CHECK_THROWS(build(seq({1, 0, 1}), 1));
  CHECK_THROWS(build_aggregated(seq({}), 1));
}

TEST_CASE("four single stubs: the three matchings are equally likely") {
  std::map<std::pair<NodeId, NodeId>, double> freq;
  const int seeds = 30000;
  for (int s = 0; s < seeds; ++s) {
    const Multigraph g = build(seq({1, 1, 1, 1}), s);
    const NodeId partner_of_0 = g.neighbors(0)[0].node;
    freq[{0, partner_of_0}] += 1;
  }
  REQUIRE(freq.size() == 3);
  for (const auto& kv : freq) CHECK(std::abs(kv.second / seeds - 1.0 / 3) < 0.01);
}

TEST_CASE("matching uniformity on small sequences (chi-square, 1e5 seeds)") {
  const int seeds = 100000;
  // Stub-level check: the partner array itself must be uniform.
  for (const std::vector<Degree>& d : {std::vector<Degree>{1, 1, 1, 1, 1, 1}, std::vector<Degree>{2, 2, 2, 2},
                                       std::vector<Degree>{3, 1, 2, 2}, std::vector<Degree>{3, 2}}) {
    std::map<std::vector<std::uint64_t>, double> seen;
    std::size_t stubs = 0;
    for (int s = 0; s < seeds; ++s) {
      const Multigraph g = build(seq(d), s);
      stubs = g.stub_count();
      std::vector<std::uint64_t> partner(stubs);
      for (std::uint64_t j = 0; j < stubs; ++j) partner[j] = g.stub_partner(j);
      seen[partner] += 1;
    }
    std::size_t matchings = 0;
    test_oracle::for_each_matching(stubs, [&](const std::vector<std::size_t>&) { ++matchings; });
    CHECK(seen.size() == matchings);
    std::vector<double> obs;
    for (const auto& kv : seen) obs.push_back(kv.second);
    const std::vector<double> probs(obs.size(), 1.0 / static_cast<double>(matchings));
    CHECK(test_oracle::chi_square_pvalue(test_oracle::chi_square(obs, probs), static_cast<double>(matchings - 1)) > 0.001);
  }
  // Graph-level check for both builders.
  for (const std::vector<Degree>& d : {std::vector<Degree>{2, 2}, std::vector<Degree>{3, 1, 2, 2},
                                       std::vector<Degree>{4, 1, 1, 1, 1}, std::vector<Degree>{2, 3, 3}}) {
    CHECK(graph_law_pvalue(d, false, seeds) > 0.001);
    CHECK(graph_law_pvalue(d, true, seeds) > 0.001);
  }
}

TEST_CASE("degree preservation") {
  const std::vector<DegreeLaw> laws = {DegreeLaw::explicit_pmf({{1, 0.5}, {3, 0.5}}), DegreeLaw::pareto_tail(2.5, 1),
                                       DegreeLaw::pareto_tail(1.5, 1)};
  std::uint64_t seed = 1;
  for (const DegreeLaw& law : laws) {
    const DegreeSequence s = sample_degrees(law, 5000, seed);
    for (bool aggregated : {false, true}) {
      if (!aggregated && padded_stub_count(s) > kMaxMaterializedStubs) continue;
      const Multigraph g = aggregated ? build_aggregated(s, seed) : build(s, seed);
      std::vector<std::uint64_t> incidence(g.node_count(), 0);
      for (const auto& e : g.edges()) {
        incidence[e.u] += e.multiplicity;
        incidence[e.v] += e.multiplicity;
      }
      std::uint64_t total = 0;
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const Degree expected = s.degrees[v] + (g.padded() && v + 1 == g.node_count() ? 1 : 0);
        CHECK(g.degree(v) == expected);
        CHECK(incidence[v] == expected);
        total += expected;
      }
      CHECK(total == g.stub_count());
      CHECK(total % 2 == 0);
      CHECK(g.edge_count() == total / 2);
      ++seed;
    }
  }
}

TEST_CASE("self-loop count has the exact configuration-model mean") {
  // E[loops] = sum_i d_i (d_i - 1) / 2 / (L - 1).
  const DegreeSequence s = sample_degrees(DegreeLaw::pareto_tail(2.2, 1), 400, 77);
  const double L = static_cast<double>(padded_stub_count(s));
  std::vector<Degree> d = s.degrees;
  if (static_cast<std::uint64_t>(L) != std::accumulate(d.begin(), d.end(), std::uint64_t{0})) d.back() += 1;
  double expected = 0.0;
  for (Degree k : d) expected += static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
  expected /= L - 1.0;
  for (bool aggregated : {false, true}) {
    const int reps = 4000;
    double sum = 0.0, sq = 0.0;
    for (int r = 0; r < reps; ++r) {
      const Multigraph g = aggregated ? build_aggregated(s, 1000 + r) : build(s, 1000 + r);
      const double x = static_cast<double>(count_self_loops(g));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - expected) < 4 * se);
  }
}

TEST_CASE("exchangeability under node relabelling") {
  const DegreeSequence base = sample_degrees(DegreeLaw::explicit_pmf({{1, 0.5}, {3, 0.5}}), 40, 3);
  std::vector<Degree> permuted = base.degrees;
  std::mt19937_64 shuffler(8);
  // Keep the parity-fix node in place so both sequences pad the same degree.
  std::shuffle(permuted.begin(), permuted.end() - 1, shuffler);
  const int reps = 3000;
  std::map<std::vector<std::size_t>, double> a, b;
  std::vector<double> xa, xb;
  for (int r = 0; r < reps; ++r) {
    const auto sa = sorted_sizes(build(base, r));
    const auto sb = sorted_sizes(build(seq(permuted), reps + r));
    a[sa] += 1;
    b[sb] += 1;
    xa.push_back(static_cast<double>(sa.size()));
    xb.push_back(static_cast<double>(sb.size()));
  }
  // Two-sample z statistic on the number of components.
  auto mean_var = [](const std::vector<double>& x) {
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double v = 0.0;
    for (double y : x) v += (y - m) * (y - m);
    return std::pair{m, v / static_cast<double>(x.size() - 1)};
  };
  const auto [ma, va] = mean_var(xa);
  const auto [mb, vb] = mean_var(xb);
  CHECK(std::abs(ma - mb) / std::sqrt((va + vb) / reps) < 4.0);

  // Permutation test on the largest-component size via label shuffling.
  std::vector<double> la, lb;
  for (const auto& [key, count] : a) la.insert(la.end(), static_cast<std::size_t>(count), static_cast<double>(key[0]));
  for (const auto& [key, count] : b) lb.insert(lb.end(), static_cast<std::size_t>(count), static_cast<double>(key[0]));
  std::vector<double> pooled = la;
  pooled.insert(pooled.end(), lb.begin(), lb.end());
  const double observed = std::abs(mean_var(la).first - mean_var(lb).first);
  int extreme = 0;
  const int rounds = 300;
  for (int t = 0; t < rounds; ++t) {
    std::shuffle(pooled.begin(), pooled.end(), shuffler);
    const std::vector<double> p1(pooled.begin(), pooled.begin() + reps), p2(pooled.begin() + reps, pooled.end());
    if (std::abs(mean_var(p1).first - mean_var(p2).first) >= observed) ++extreme;
  }
  CHECK(static_cast<double>(extreme + 1) / (rounds + 1) > 0.001);
}

TEST_CASE("two-cycle census") {
  const Multigraph pair = Multigraph::from_edge_list(2, {{0, 1}, {0, 1}});
  CHECK(count_two_cycles(pair) == 1);
  const Multigraph triangle = Multigraph::from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(count_two_cycles(triangle) == 0);
  // A double edge between degree-3 nodes is not a degree-2 two-cycle.
  const Multigraph thick = Multigraph::from_edge_list(4, {{0, 1}, {0, 1}, {0, 2}, {1, 3}});
  CHECK(count_two_cycles(thick) == 0);
  // Triple edge: degrees 3, so no.
  CHECK(count_two_cycles(Multigraph::from_edge_list(2, {{0, 1}, {0, 1}, {0, 1}})) == 0);
}

TEST_CASE("edge list round trip") {
  const DegreeSequence s = sample_degrees(DegreeLaw::pareto_tail(2.5, 1), 300, 4);
  const Multigraph g = build(s, 99);
  std::stringstream buffer;
  write_edge_list(buffer, g, 99);
  const EdgeListFile back = read_edge_list(buffer);
  REQUIRE(back.seed.has_value());
  CHECK(*back.seed == 99);
  CHECK(back.graph.node_count() == g.node_count());
  CHECK(back.graph.degrees() == g.degrees());
  CHECK(test_oracle::key_of(back.graph) == test_oracle::key_of(g));

  std::stringstream bare("0 1\n1 2\n2 2\n");
  const EdgeListFile plain = read_edge_list(bare);
  CHECK_FALSE(plain.seed.has_value());
  CHECK(plain.graph.node_count() == 3);
  CHECK(plain.graph.degree(2) == 3);

  std::stringstream broken("# nodes=2 stubs=2 seed=1\n0 7\n");
  CHECK_THROWS(read_edge_list(broken));
}

TEST_CASE("very large stub counts use the aggregated builder") {
  const DegreeSequence s = sample_degrees(DegreeLaw::pareto_tail(1.5, 1), 100000, 12);
  const std::uint64_t L = padded_stub_count(s);
  const Multigraph g = build_auto(s, 12);
  CHECK(g.stub_count() == L);
  CHECK(g.has_stub_order() == (L <= kMaxMaterializedStubs));
}
