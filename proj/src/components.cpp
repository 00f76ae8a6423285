#include "confmodel/components.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace confmodel {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace

ComponentSummary component_summary(const Multigraph& g) {
  const std::size_t n = g.node_count();
  DisjointSets sets(n);
  for (const EdgeRun& e : g.edges()) sets.unite(e.u, e.v);

  // Label roots in order of first appearance, which is also the order of the
  // smallest member.
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(n, kUnset);
  std::vector<std::size_t> size;
  std::vector<std::uint32_t> raw(n);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId root = sets.find(v);
    if (label[root] == kUnset) {
      label[root] = static_cast<std::uint32_t>(size.size());
      size.push_back(0);
    }
    raw[v] = label[root];
    ++size[raw[v]];
  }

  std::vector<std::uint32_t> by_size(size.size());
  std::iota(by_size.begin(), by_size.end(), std::uint32_t{0});
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return size[a] > size[b]; });
  std::vector<std::uint32_t> rank(size.size());
  for (std::uint32_t r = 0; r < by_size.size(); ++r) rank[by_size[r]] = r;

  ComponentSummary out;
  out.n = n;
  out.assignment.resize(n);
  for (NodeId v = 0; v < n; ++v) out.assignment[v] = rank[raw[v]];
  out.sizes.resize(size.size());
  for (std::uint32_t r = 0; r < by_size.size(); ++r) out.sizes[r] = size[by_size[r]];
  return out;
}

GiantStats giant_stats(const ComponentSummary& s, double gamma) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("giant_stats: gamma must be >= 1");
  GiantStats out;
  out.gamma = gamma;
  out.largest = s.sizes.empty() ? 0 : s.sizes[0];
  out.second = s.sizes.size() > 1 ? s.sizes[1] : 0;
  out.complement = s.n - out.largest;
  std::size_t covered = 0;
  for (std::size_t size : s.sizes) {
    if (static_cast<double>(size) < gamma) break;
    covered += size;
  }
  out.q_hat = s.n == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(s.n);
  return out;
}

bool is_connected(const ComponentSummary& s) { return s.sizes.size() == 1; }

std::vector<std::uint64_t> find_star_components(const Multigraph& g) {
  const ComponentSummary s = component_summary(g);
  std::vector<std::uint64_t> stars;
  for (NodeId c = 0; c < g.node_count(); ++c) {
    const Degree k = g.degree(c);
    if (s.sizes[s.assignment[c]] != k + 1) continue;
    const auto nb = g.neighbors(c);
    if (nb.size() != k) continue;
    const bool simple = std::all_of(nb.begin(), nb.end(), [&](const Incidence& x) {
      return x.node != c && x.multiplicity == 1 && g.degree(x.node) == 1;
    });
    if (!simple) continue;
    // An isolated edge has two candidate centres; report it once.
    if (k == 1 && nb[0].node < c) continue;
    stars.push_back(k);
  }
  std::sort(stars.begin(), stars.end());
  return stars;
}

}  // namespace confmodel
