#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "confmodel/degree_law.hpp"

namespace confmodel {

using NodeId = std::uint32_t;

/// `multiplicity` parallel copies of the edge {u, v}; u == v is a self-loop.
struct EdgeRun {
  NodeId u;
  NodeId v;
  std::uint64_t multiplicity;
};

/// One adjacency entry. A self-loop at i appears in i's list as (i, 2 * loops)
/// so that multiplicities along a node's list always sum to its degree.
struct Incidence {
  NodeId node;
  std::uint64_t multiplicity;
};

/// Configuration-model multigraph. Self-loops and parallel edges are kept.
///
/// Stub j of node i has global index first_stub(i) + j, so stubs are numbered
/// node by node. When the pairing was realized stub by stub, `stub_partner`
/// records it and exploration procedures can follow stubs in order; graphs
/// built in aggregated form carry only edge multiplicities.
class Multigraph {
 public:
  Multigraph(std::vector<Degree> degrees, std::vector<EdgeRun> edges, bool padded,
             std::vector<std::uint64_t> stub_partner = {});

  /// Unit edges in stub order: the t-th endpoint occurrence of a node uses its
  /// t-th stub. Degrees are the incidence counts.
  static Multigraph from_edge_list(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges);

  std::size_t node_count() const { return degrees_.size(); }
  const std::vector<Degree>& degrees() const { return degrees_; }
  Degree degree(NodeId v) const { return degrees_[v]; }
  std::uint64_t stub_count() const { return stub_count_; }
  std::uint64_t edge_count() const { return stub_count_ / 2; }
  const std::vector<EdgeRun>& edges() const { return edges_; }
  /// True when the last node received an extra stub to make the sum even.
  bool padded() const { return padded_; }

  /// Distinct neighbours sorted by id, with multiplicities.
  std::span<const Incidence> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  bool has_stub_order() const { return !stub_partner_.empty(); }
  std::uint64_t first_stub(NodeId v) const { return stub_offsets_[v]; }
  NodeId stub_owner(std::uint64_t stub) const;
  /// Requires has_stub_order().
  std::uint64_t stub_partner(std::uint64_t stub) const;

 private:
  std::vector<Degree> degrees_;
  std::vector<EdgeRun> edges_;
  bool padded_;
  std::uint64_t stub_count_ = 0;
  std::vector<std::uint64_t> stub_offsets_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> adjacency_;
  std::vector<std::uint64_t> stub_partner_;
};

}  // namespace confmodel
