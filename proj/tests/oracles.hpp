#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms beyond reading graph structure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "confmodel/multigraph.hpp"

namespace test_oracle {

using confmodel::Multigraph;
using confmodel::NodeId;

// Adjacency lists rebuilt from the edge runs, one entry per unit edge.
inline std::vector<std::vector<NodeId>> plain_adjacency(const Multigraph& g) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (const auto& e : g.edges()) {
    for (std::uint64_t c = 0; c < e.multiplicity; ++c) {
      adj[e.u].push_back(e.v);
      if (e.u != e.v) adj[e.v].push_back(e.u);
    }
  }
  return adj;
}

inline std::vector<int> plain_bfs(const std::vector<std::vector<NodeId>>& adj, NodeId s) {
  std::vector<int> d(adj.size(), -1);
  std::queue<NodeId> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const NodeId x = q.front();
    q.pop();
    for (NodeId y : adj[x]) {
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
    }
  }
  return d;
}

// All-pairs BFS.
inline int brute_diameter(const Multigraph& g) {
  const auto adj = plain_adjacency(g);
  int best = 0;
  for (NodeId s = 0; s < adj.size(); ++s)
    for (int d : plain_bfs(adj, s)) best = std::max(best, d);
  return best;
}

// Calls visit(partner) for every perfect matching of stubs 0..L-1.
inline void for_each_matching(std::size_t stubs, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> partner(stubs, stubs);
  std::function<void()> rec = [&]() {
    std::size_t first = 0;
    while (first < stubs && partner[first] != stubs) ++first;
    if (first == stubs) {
      visit(partner);
      return;
    }
    for (std::size_t other = first + 1; other < stubs; ++other) {
      if (partner[other] != stubs) continue;
      partner[first] = other;
      partner[other] = first;
      rec();
      partner[first] = stubs;
      partner[other] = stubs;
    }
  };
  rec();
}

// Sorted list of node pairs; identifies a multigraph on labelled nodes.
using GraphKey = std::vector<std::pair<NodeId, NodeId>>;

inline GraphKey key_of(const Multigraph& g) {
  GraphKey key;
  for (const auto& e : g.edges())
    for (std::uint64_t c = 0; c < e.multiplicity; ++c) key.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(key.begin(), key.end());
  return key;
}

// Exact law of the labelled multigraph under uniform stub matching.
inline std::map<GraphKey, double> exact_graph_law(const std::vector<std::uint64_t>& degrees) {
  std::vector<NodeId> owner;
  for (NodeId v = 0; v < degrees.size(); ++v)
    for (std::uint64_t j = 0; j < degrees[v]; ++j) owner.push_back(v);
  std::map<GraphKey, double> law;
  std::size_t total = 0;
  for_each_matching(owner.size(), [&](const std::vector<std::size_t>& partner) {
    GraphKey key;
    for (std::size_t s = 0; s < partner.size(); ++s)
      if (s < partner[s]) key.emplace_back(std::min(owner[s], owner[partner[s]]), std::max(owner[s], owner[partner[s]]));
    std::sort(key.begin(), key.end());
    law[key] += 1.0;
    ++total;
  });
  for (auto& kv : law) kv.second /= static_cast<double>(total);
  return law;
}

// Probability that stubs 0..A-1 are matched only among themselves, by full
// enumeration of the matchings of L stubs.
inline double brute_disconnect(std::size_t a, std::size_t stubs) {
  std::size_t good = 0;
  std::size_t total = 0;
  for_each_matching(stubs, [&](const std::vector<std::size_t>& partner) {
    ++total;
    bool closed = true;
    for (std::size_t s = 0; s < a; ++s) closed = closed && partner[s] < a;
    if (closed) ++good;
  });
  return static_cast<double>(good) / static_cast<double>(total);
}

inline double chi_square_pvalue(double statistic, double dof) {
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

// Pearson statistic of observed counts against expected probabilities.
inline double chi_square(const std::vector<double>& observed, const std::vector<double>& probs) {
  double total = 0.0;
  for (double o : observed) total += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = probs[i] * total;
    stat += (observed[i] - e) * (observed[i] - e) / e;
  }
  return stat;
}

// Pareto pmf straight from the tail formula P(D >= k) = (kmin/k)^alpha.
inline double pareto_pmf(double tau, double kmin, double k) {
  if (k < kmin) return 0.0;
  const double a = tau - 1.0;
  return std::pow(kmin / k, a) - std::pow(kmin / (k + 1.0), a);
}

// sum_{k >= from} k^(-s) by direct summation up to `cut` and an
// Euler-Maclaurin tail with three correction terms.
inline double zeta_tail(double s, double from, double cut = 2e6) {
  double sum = 0.0;
  for (double k = cut - 1.0; k >= from; k -= 1.0) sum += std::pow(k, -s);
  const double x = std::max(cut, from);
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) + s * std::pow(x, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0;
  return sum;
}

// E[D] and E[D(D-1)] of the Pareto law through sum_k dh(k) P(D >= k), with
// dh = 1 and dh = 2(k-1) respectively.
inline double pareto_mean(double tau, double kmin) {
  const double a = tau - 1.0;
  return kmin + std::pow(kmin, a) * zeta_tail(a, kmin + 1.0);
}

inline double pareto_factorial_moment(double tau, double kmin) {
  const double a = tau - 1.0;
  const double head = kmin * (kmin - 1.0);
  return head + 2.0 * std::pow(kmin, a) * (zeta_tail(a - 1.0, kmin + 1.0) - zeta_tail(a, kmin + 1.0));
}

// sum_{j >= from} j(j-1) f_j for the Pareto law, from >= kmin + 1.
inline double pareto_factorial_tail(double tau, double kmin, double from) {
  const double a = tau - 1.0;
  const double at_from = from * (from - 1.0) * std::pow(kmin / from, a);
  return at_from + 2.0 * std::pow(kmin, a) * (zeta_tail(a - 1.0, from + 1.0) - zeta_tail(a, from + 1.0));
}

// Kullback-Leibler rate of a Bernoulli(p) mean falling to x.
inline double bernoulli_rate(double p, double x) {
  return x * std::log(x / p) + (1.0 - x) * std::log((1.0 - x) / (1.0 - p));
}

}  // namespace test_oracle
