#include "confmodel/distances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "confmodel/components.hpp"
#include "confmodel/random_variates.hpp"

namespace confmodel {

namespace {

// BFS with buffers reused across runs; only touched entries are reset.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(const Multigraph& g) : g_(g), dist_(g.node_count(), kUnreachable) {}

  struct Result {
    Distance eccentricity;
    NodeId farthest;
  };

  Result run(NodeId src) {
    reset();
    dist_[src] = 0;
    order_.push_back(src);
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const NodeId x = order_[head];
      for (const Incidence& y : g_.neighbors(x)) {
        if (dist_[y.node] == kUnreachable) {
          dist_[y.node] = dist_[x] + 1;
          order_.push_back(y.node);
        }
      }
    }
    const NodeId last = order_.back();
    return {dist_[last], last};
  }

  Distance distance(NodeId v) const { return dist_[v]; }
  /// Nodes of the last run in BFS order, hence sorted by distance.
  const std::vector<NodeId>& visited() const { return order_; }

 private:
  void reset() {
    for (NodeId v : order_) dist_[v] = kUnreachable;
    order_.clear();
  }

  const Multigraph& g_;
  std::vector<Distance> dist_;
  std::vector<NodeId> order_;
};

// Halfway node of a shortest a-b path, found by walking back from b through
// distance-decreasing neighbours of a BFS rooted at a.
NodeId path_midpoint(const Multigraph& g, const BfsWorkspace& from_a, NodeId b) {
  NodeId x = b;
  const Distance target = from_a.distance(b) / 2;
  while (from_a.distance(x) > target) {
    for (const Incidence& y : g.neighbors(x)) {
      if (from_a.distance(y.node) + 1 == from_a.distance(x)) {
        x = y.node;
        break;
      }
    }
  }
  return x;
}

Distance component_diameter(const Multigraph& g, BfsWorkspace& bfs, NodeId start, Distance known) {
  // Double sweep to pick a central start vertex.
  const auto first = bfs.run(start);
  const auto second = bfs.run(first.farthest);
  Distance lower = std::max({known, first.eccentricity, second.eccentricity});
  const NodeId centre = path_midpoint(g, bfs, second.farthest);

  const auto from_centre = bfs.run(centre);
  lower = std::max(lower, from_centre.eccentricity);
  std::vector<std::vector<NodeId>> fringe(from_centre.eccentricity + 1);
  for (NodeId v : bfs.visited()) fringe[bfs.distance(v)].push_back(v);

  Distance upper = 2 * from_centre.eccentricity;
  for (Distance level = from_centre.eccentricity; upper > lower && level > 0; --level) {
    Distance best = lower;
    for (NodeId v : fringe[level]) best = std::max(best, bfs.run(v).eccentricity);
    if (best > 2 * (level - 1)) return best;
    lower = best;
    upper = 2 * (level - 1);
  }
  return lower;
}

}  // namespace

std::vector<Distance> bfs_distances(const Multigraph& g, NodeId src) {
  if (src >= g.node_count()) throw std::out_of_range("bfs_distances: source out of range");
  std::vector<Distance> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue{src};
  dist[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId x = queue[head];
    for (const Incidence& y : g.neighbors(x)) {
      if (dist[y.node] == kUnreachable) {
        dist[y.node] = dist[x] + 1;
        queue.push_back(y.node);
      }
    }
  }
  return dist;
}

PairDistance::PairDistance(const Multigraph& g)
    : g_(g), side_(g.node_count(), 0), dist_(g.node_count(), 0) {}

Distance PairDistance::operator()(NodeId u, NodeId v) {
  if (u >= g_.node_count() || v >= g_.node_count())
    throw std::out_of_range("typical_distance: node out of range");
  if (u == v) return 0;
  for (NodeId x : touched_) side_[x] = 0;
  touched_.clear();

  // side_ is 1 for nodes reached from u, 2 for nodes reached from v.
  std::vector<NodeId> frontier[2] = {{u}, {v}};
  side_[u] = 1;
  side_[v] = 2;
  dist_[u] = 0;
  dist_[v] = 0;
  touched_ = {u, v};

  auto work = [&](const std::vector<NodeId>& f) {
    std::size_t w = 0;
    for (NodeId x : f) w += g_.neighbors(x).size();
    return w;
  };

  std::vector<NodeId> next;
  while (!frontier[0].empty() && !frontier[1].empty()) {
    const int a = work(frontier[0]) <= work(frontier[1]) ? 0 : 1;
    const auto mine = static_cast<std::uint8_t>(a + 1);
    Distance best = kUnreachable;
    next.clear();
    for (NodeId x : frontier[a]) {
      for (const Incidence& y : g_.neighbors(x)) {
        if (side_[y.node] == mine) continue;
        if (side_[y.node] != 0) {
          best = std::min(best, dist_[x] + 1 + dist_[y.node]);
          continue;
        }
        side_[y.node] = mine;
        dist_[y.node] = dist_[x] + 1;
        touched_.push_back(y.node);
        next.push_back(y.node);
      }
    }
    if (best != kUnreachable) return best;
    frontier[a].swap(next);
  }
  return kUnreachable;
}

Distance typical_distance(const Multigraph& g, NodeId u, NodeId v) { return PairDistance(g)(u, v); }

Distance exact_diameter(const Multigraph& g) {
  const ComponentSummary cs = component_summary(g);
  // Highest-degree node of every component as its iFUB starting point.
  std::vector<NodeId> start(cs.sizes.size());
  std::vector<bool> seen(cs.sizes.size(), false);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::uint32_t c = cs.assignment[v];
    if (!seen[c] || g.degree(v) > g.degree(start[c])) {
      start[c] = v;
      seen[c] = true;
    }
  }
  BfsWorkspace bfs(g);
  Distance best = 0;
  for (std::size_t c = 0; c < cs.sizes.size(); ++c) {
    // Sizes are sorted, so no later component can beat `best` either.
    if (cs.sizes[c] - 1 <= best) break;
    best = std::max(best, component_diameter(g, bfs, start[c], best));
  }
  return best;
}

Distance double_sweep_lower_bound(const Multigraph& g, std::size_t seeds, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  BfsWorkspace bfs(g);
  Rng rng(seed);
  NodeId hub = 0;
  for (NodeId v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(hub)) hub = v;

  Distance best = 0;
  for (std::size_t t = 0; t < std::max<std::size_t>(seeds, 1); ++t) {
    NodeId current = t == 0 ? hub : static_cast<NodeId>(uniform_below(rng, n));
    Distance reached = 0;
    for (;;) {
      const auto r = bfs.run(current);
      if (r.eccentricity <= reached && reached > 0) break;
      if (r.eccentricity == 0) break;
      reached = r.eccentricity;
      current = r.farthest;
    }
    best = std::max(best, reached);
  }
  return best;
}

std::size_t longest_degree2_run(const Multigraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> done(n, false);
  std::vector<NodeId> stack;
  std::size_t best = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (done[s] || g.degree(s) != 2) continue;
    std::size_t size = 0;
    done[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      ++size;
      for (const Incidence& y : g.neighbors(x)) {
        if (!done[y.node] && g.degree(y.node) == 2) {
          done[y.node] = true;
          stack.push_back(y.node);
        }
      }
    }
    best = std::max(best, size);
  }
  return best;
}

std::vector<NodeId> core_nodes(const Multigraph& g, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("core_nodes: sigma must be positive");
  if (g.node_count() < 2) throw std::invalid_argument("core_nodes: need n >= 2");
  const double threshold = std::pow(std::log(static_cast<double>(g.node_count())), sigma);
  std::vector<NodeId> core;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (static_cast<double>(g.degree(v)) >= threshold) core.push_back(v);
  return core;
}

std::vector<Distance> distance_to_core(const Multigraph& g, const std::vector<NodeId>& core) {
  if (core.empty()) throw std::invalid_argument("distance_to_core: empty core");
  std::vector<Distance> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  for (NodeId c : core) {
    if (c >= g.node_count()) throw std::out_of_range("distance_to_core: core node out of range");
    if (dist[c] == 0) continue;
    dist[c] = 0;
    queue.push_back(c);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId x = queue[head];
    for (const Incidence& y : g.neighbors(x)) {
      if (dist[y.node] == kUnreachable) {
        dist[y.node] = dist[x] + 1;
        queue.push_back(y.node);
      }
    }
  }
  return dist;
}

ExplorationReport exploration_tree(const Multigraph& g, NodeId root, std::size_t m, std::size_t k,
                                   const std::vector<NodeId>& core) {
  if (root >= g.node_count()) throw std::out_of_range("exploration_tree: root out of range");
  if (!g.has_stub_order()) throw std::invalid_argument("exploration_tree: graph has no stub order");

  ExplorationReport report;
  report.root = root;
  report.m = m;
  report.nodes_per_depth = {1};
  report.frontier_stubs = 1;

  const std::unordered_set<NodeId> in_core(core.begin(), core.end());
  if (in_core.count(root)) {
    report.core_hit_depth = 0;
    return report;
  }

  struct Member {
    NodeId node;
    std::uint64_t arrival;  // stub the node was reached through
  };
  constexpr std::uint64_t kNone = ~std::uint64_t{0};
  std::unordered_set<NodeId> in_tree{root};
  std::unordered_set<std::uint64_t> revealed;
  std::vector<Member> level{{root, kNone}};

  for (std::size_t depth = 0; depth < k; ++depth) {
    std::vector<Member> next;
    for (const Member& v : level) {
      std::size_t budget = depth == 0 ? m + 1 : m;
      const std::uint64_t first = g.first_stub(v.node);
      for (std::uint64_t s = first; s < first + g.degree(v.node) && budget > 0; ++s) {
        if (s == v.arrival) continue;
        --budget;
        if (!revealed.insert(s).second) continue;
        const std::uint64_t p = g.stub_partner(s);
        revealed.insert(p);
        const NodeId w = g.stub_owner(p);
        if (!in_tree.insert(w).second) {
          ++report.collisions;
          continue;
        }
        next.push_back({w, p});
        if (in_core.count(w)) {
          report.core_hit_depth = depth + 1;
          break;
        }
      }
      if (report.core_hit_depth) break;
    }
    if (next.empty()) break;
    report.depth_explored = depth + 1;
    report.nodes_per_depth.push_back(next.size());
    report.frontier_stubs = next.size();
    if (report.core_hit_depth) break;
    level = std::move(next);
  }
  return report;
}

}  // namespace confmodel
