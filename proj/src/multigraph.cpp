#include "confmodel/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace confmodel {

Multigraph::Multigraph(std::vector<Degree> degrees, std::vector<EdgeRun> edges, bool padded,
                       std::vector<std::uint64_t> stub_partner)
    : degrees_(std::move(degrees)),
      edges_(std::move(edges)),
      padded_(padded),
      stub_partner_(std::move(stub_partner)) {
  const std::size_t n = degrees_.size();
  if (n == 0) throw std::invalid_argument("Multigraph: no nodes");
  if (n > std::numeric_limits<NodeId>::max())
    throw std::invalid_argument("Multigraph: node count exceeds 32-bit ids");

  stub_offsets_.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (degrees_[i] > std::numeric_limits<std::uint64_t>::max() - stub_offsets_[i])
      throw std::overflow_error("Multigraph: stub count overflows");
    stub_offsets_[i + 1] = stub_offsets_[i] + degrees_[i];
  }
  stub_count_ = stub_offsets_[n];
  if (stub_count_ % 2 != 0) throw std::invalid_argument("Multigraph: odd stub count");

  std::vector<std::size_t> entries(n, 0);
  std::vector<std::uint64_t> incident(n, 0);
  std::uint64_t pairs = 0;
  for (const EdgeRun& e : edges_) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("Multigraph: edge endpoint out of range");
    if (e.multiplicity == 0) throw std::invalid_argument("Multigraph: zero multiplicity");
    pairs += e.multiplicity;
    incident[e.u] += e.multiplicity;
    incident[e.v] += e.multiplicity;
    ++entries[e.u];
    if (e.u != e.v) ++entries[e.v];
  }
  if (pairs != stub_count_ / 2) throw std::invalid_argument("Multigraph: edge count differs from L_N/2");
  for (std::size_t i = 0; i < n; ++i) {
    if (incident[i] != degrees_[i])
      throw std::invalid_argument("Multigraph: incidence of node " + std::to_string(i) +
                                  " differs from its degree");
  }

  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + entries[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const EdgeRun& e : edges_) {
    if (e.u == e.v) {
      adjacency_[cursor[e.u]++] = {e.u, 2 * e.multiplicity};
    } else {
      adjacency_[cursor[e.u]++] = {e.v, e.multiplicity};
      adjacency_[cursor[e.v]++] = {e.u, e.multiplicity};
    }
  }

  // Sort each list and merge repeated neighbours in place.
  std::size_t write = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t end = offsets_[i + 1];
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(begin),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(end),
              [](const Incidence& a, const Incidence& b) { return a.node < b.node; });
    const std::size_t start = write;
    for (std::size_t j = begin; j < end; ++j) {
      if (write > start && adjacency_[write - 1].node == adjacency_[j].node) {
        adjacency_[write - 1].multiplicity += adjacency_[j].multiplicity;
      } else {
        adjacency_[write++] = adjacency_[j];
      }
    }
    begin = end;
    offsets_[i] = start;
  }
  offsets_[n] = write;
  adjacency_.resize(write);
  adjacency_.shrink_to_fit();

  if (!stub_partner_.empty()) {
    if (stub_partner_.size() != stub_count_)
      throw std::invalid_argument("Multigraph: stub pairing has the wrong length");
    for (std::uint64_t s = 0; s < stub_count_; ++s) {
      const std::uint64_t p = stub_partner_[s];
      if (p >= stub_count_ || p == s || stub_partner_[p] != s)
        throw std::invalid_argument("Multigraph: stub pairing is not an involution");
    }
  }
}

Multigraph Multigraph::from_edge_list(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  if (n == 0) throw std::invalid_argument("from_edge_list: no nodes");
  std::vector<Degree> degrees(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("from_edge_list: endpoint out of range");
    ++degrees[u];
    ++degrees[v];
  }
  std::vector<std::uint64_t> next(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) next[i + 1] = next[i] + degrees[i];
  std::vector<std::uint64_t> partner(next[n]);
  std::vector<EdgeRun> runs;
  runs.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    const std::uint64_t a = next[u]++;
    const std::uint64_t b = next[v]++;
    partner[a] = b;
    partner[b] = a;
    runs.push_back({std::min(u, v), std::max(u, v), 1});
  }
  return Multigraph(std::move(degrees), std::move(runs), false, std::move(partner));
}

NodeId Multigraph::stub_owner(std::uint64_t stub) const {
  if (stub >= stub_count_) throw std::out_of_range("stub_owner: stub index out of range");
  const auto it = std::upper_bound(stub_offsets_.begin(), stub_offsets_.end(), stub);
  return static_cast<NodeId>(it - stub_offsets_.begin() - 1);
}

std::uint64_t Multigraph::stub_partner(std::uint64_t stub) const {
  if (!has_stub_order()) throw std::logic_error("stub_partner: graph was built without stub order");
  return stub_partner_.at(stub);
}

}  // namespace confmodel
