#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "confmodel/multigraph.hpp"

namespace confmodel {

using Distance = std::uint32_t;
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

std::vector<Distance> bfs_distances(const Multigraph& g, NodeId src);

/// Repeated point-to-point queries on one graph; buffers are reused, so one
/// instance must not be shared between threads.
class PairDistance {
 public:
  explicit PairDistance(const Multigraph& g);
  Distance operator()(NodeId u, NodeId v);

 private:
  const Multigraph& g_;
  std::vector<std::uint8_t> side_;
  std::vector<Distance> dist_;
  std::vector<NodeId> touched_;
};

/// d(u, v) by bidirectional BFS, always growing the side whose frontier has the
/// shorter total adjacency list. kUnreachable when u and v lie in different components.
Distance typical_distance(const Multigraph& g, NodeId u, NodeId v);

/// Largest finite distance. Runs iFUB (Crescenzi et al.) inside each
/// component, so the answer is exact while usually needing far fewer than n
/// BFS passes.
Distance exact_diameter(const Multigraph& g);

/// Repeated sweeps: BFS, jump to the farthest node, repeat while the
/// eccentricity grows. The first start is a maximum-degree node, the rest are
/// uniform. Never exceeds exact_diameter().
Distance double_sweep_lower_bound(const Multigraph& g, std::size_t seeds, std::uint64_t seed);

/// Size of the largest connected piece of the subgraph induced by degree-2
/// nodes. Such pieces are paths or cycles.
std::size_t longest_degree2_run(const Multigraph& g);

/// Nodes with degree >= (log n)^sigma, ascending.
std::vector<NodeId> core_nodes(const Multigraph& g, double sigma);

/// Multi-source BFS from the core. Throws std::invalid_argument on an empty core.
std::vector<Distance> distance_to_core(const Multigraph& g, const std::vector<NodeId>& core);

struct ExplorationReport {
  NodeId root = 0;
  std::size_t m = 0;
  std::size_t depth_explored = 0;
  std::size_t collisions = 0;
  std::optional<std::size_t> core_hit_depth;
  /// Tree nodes at depth depth_explored; on a collision-free neighbourhood this
  /// is (m+1) m^(k-1).
  std::uint64_t frontier_stubs = 0;
  std::vector<std::uint64_t> nodes_per_depth;
};

/// k-exploration tree in stub order. The root follows its first m+1 stubs and
/// every later node its first m stubs other than the one it was reached by.
/// A stub whose pairing was already revealed still uses up one of the m slots.
/// A pairing that lands on a node already in the tree is a collision. Stops
/// after depth k or as soon as a core node joins the tree.
ExplorationReport exploration_tree(const Multigraph& g, NodeId root, std::size_t m, std::size_t k,
                                   const std::vector<NodeId>& core);

}  // namespace confmodel
