#include "confmodel/graph_builder.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "confmodel/random_variates.hpp"

namespace confmodel {

namespace {

constexpr std::uint64_t kNoPartner = std::numeric_limits<std::uint64_t>::max();

struct PaddedDegrees {
  std::vector<Degree> degrees;
  std::uint64_t stubs;
  bool padded;
};

PaddedDegrees pad(const DegreeSequence& seq) {
  if (seq.degrees.empty()) throw std::invalid_argument("build: empty degree sequence");
  PaddedDegrees out{seq.degrees, 0, false};
  for (Degree d : out.degrees) {
    if (d < 1) throw std::invalid_argument("build: degrees must be >= 1");
    if (d > std::numeric_limits<std::uint64_t>::max() - out.stubs)
      throw std::overflow_error("build: total degree overflows 64 bits");
    out.stubs += d;
  }
  if (out.stubs % 2 != 0) {
    if (out.stubs == std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("build: total degree overflows 64 bits");
    ++out.degrees.back();
    ++out.stubs;
    out.padded = true;
  }
  return out;
}

// Prefix sums over positions with point updates and weighted search.
class Fenwick {
 public:
  explicit Fenwick(const std::vector<std::uint64_t>& weights) : tree_(weights.size() + 1, 0) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      tree_[i + 1] += weights[i];
      const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i + 1];
    }
    high_bit_ = 1;
    while (high_bit_ * 2 < tree_.size()) high_bit_ *= 2;
  }

  void subtract(std::size_t index, std::uint64_t amount) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] -= amount;
  }

  // Smallest index whose inclusive prefix sum exceeds target.
  std::size_t find(std::uint64_t target) const {
    std::size_t pos = 0;
    for (std::size_t step = high_bit_; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::size_t high_bit_;
};

}  // namespace

std::uint64_t padded_stub_count(const DegreeSequence& seq) { return pad(seq).stubs; }

Multigraph build(const DegreeSequence& seq, std::uint64_t seed) {
  PaddedDegrees pd = pad(seq);
  const std::uint64_t total = pd.stubs;
  if (total > kMaxMaterializedStubs)
    throw std::length_error("build: " + std::to_string(total) +
                            " stubs exceed the stub-level limit; use build_aggregated");
  const std::size_t n = pd.degrees.size();
  std::vector<std::uint64_t> first(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) first[i + 1] = first[i] + pd.degrees[i];
  auto owner = [&](std::uint64_t stub) {
    return static_cast<NodeId>(std::upper_bound(first.begin(), first.end(), stub) - first.begin() - 1);
  };

  // `pool` holds the free stubs in arbitrary order; `where` inverts it.
  std::vector<std::uint64_t> pool(total);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  std::vector<std::uint64_t> where(pool);
  auto remove = [&](std::uint64_t stub) {
    const std::uint64_t slot = where[stub];
    const std::uint64_t last = pool.back();
    pool[slot] = last;
    where[last] = slot;
    pool.pop_back();
  };

  Rng rng(seed);
  std::vector<std::uint64_t> partner(total, kNoPartner);
  std::vector<EdgeRun> edges;
  edges.reserve(total / 2);
  NodeId current = 0;
  for (std::uint64_t s = 0; s < total; ++s) {
    while (s >= first[current + 1]) ++current;
    if (partner[s] != kNoPartner) continue;
    remove(s);
    const std::uint64_t p = pool[uniform_below(rng, pool.size())];
    remove(p);
    partner[s] = p;
    partner[p] = s;
    edges.push_back({current, owner(p), 1});
  }
  return Multigraph(std::move(pd.degrees), std::move(edges), pd.padded, std::move(partner));
}

Multigraph build_aggregated(const DegreeSequence& seq, std::uint64_t seed) {
  PaddedDegrees pd = pad(seq);
  const std::size_t n = pd.degrees.size();
  if (n > std::numeric_limits<NodeId>::max())
    throw std::invalid_argument("build_aggregated: node count exceeds 32-bit ids");

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return pd.degrees[a] > pd.degrees[b]; });
  std::vector<std::uint64_t> remaining(n);
  for (std::size_t p = 0; p < n; ++p) remaining[p] = pd.degrees[order[p]];
  // From here on `remaining` is indexed by position in `order`.
  Fenwick free_stubs(remaining);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::size_t alive = n;
  const double log2n = std::max(1.0, std::log2(static_cast<double>(n)));

  Rng rng(seed);
  std::vector<EdgeRun> edges;
  std::uint64_t free_total = pd.stubs;

  auto take = [&](std::size_t p, std::uint64_t amount) {
    remaining[p] -= amount;
    free_stubs.subtract(p, amount);
    if (remaining[p] == 0) --alive;
  };

  for (std::size_t p = 0; p < n; ++p) {
    const std::uint64_t r = remaining[p];
    if (r == 0) continue;
    const NodeId i = order[p];
    take(p, r);

    // Law of the number of self-loops S among i's r stubs when T stubs are free:
    // P(s+1)/P(s) = (r-2s)(r-2s-1) / ((2s+2)(T-2r+2s+2)).
    const std::uint64_t t = free_total;
    const double rd = static_cast<double>(r);
    const double td = static_cast<double>(t);
    const std::uint64_t s_lo = r > t / 2 ? r - t / 2 : 0;
    const std::uint64_t loops = sample_unimodal_by_ratio(
        s_lo, r / 2,
        [rd, td](std::uint64_t s) {
          const double two_s = 2.0 * static_cast<double>(s);
          return (rd - two_s) * (rd - two_s - 1.0) / ((two_s + 2.0) * (td - 2.0 * rd + two_s + 2.0));
        },
        rng);
    if (loops > 0) edges.push_back({i, i, loops});
    const std::uint64_t outgoing = r - 2 * loops;
    free_total -= r + outgoing;
    if (outgoing == 0) continue;

    if (static_cast<double>(outgoing) * log2n > static_cast<double>(alive)) {
      // Sequential conditional sweep over the free nodes.
      std::uint64_t pool = t - r;
      std::uint64_t left = outgoing;
      std::size_t keep = 0;
      for (std::size_t a = 0; a < active.size(); ++a) {
        const std::size_t q = active[a];
        if (remaining[q] == 0) continue;
        if (left > 0) {
          const std::uint64_t have = remaining[q];
          const std::uint64_t x = sample_hypergeometric(have, pool - have, left, rng);
          pool -= have;
          left -= x;
          if (x > 0) {
            edges.push_back({std::min(i, order[q]), std::max(i, order[q]), x});
            take(q, x);
          }
        }
        if (remaining[q] > 0) active[keep++] = q;
      }
      active.resize(keep);
    } else {
      std::map<std::size_t, std::uint64_t> hits;
      std::uint64_t pool = t - r;
      for (std::uint64_t c = 0; c < outgoing; ++c) {
        const std::size_t q = free_stubs.find(uniform_below(rng, pool));
        take(q, 1);
        --pool;
        ++hits[q];
      }
      for (const auto& [q, x] : hits) edges.push_back({std::min(i, order[q]), std::max(i, order[q]), x});
    }
  }
  return Multigraph(std::move(pd.degrees), std::move(edges), pd.padded);
}

Multigraph build_auto(const DegreeSequence& seq, std::uint64_t seed) {
  return padded_stub_count(seq) <= kMaxMaterializedStubs ? build(seq, seed) : build_aggregated(seq, seed);
}

std::uint64_t count_self_loops(const Multigraph& g) {
  std::uint64_t loops = 0;
  for (const EdgeRun& e : g.edges())
    if (e.u == e.v) loops += e.multiplicity;
  return loops;
}

std::uint64_t count_two_cycles(const Multigraph& g) {
  std::uint64_t cycles = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) != 2) continue;
    const auto nb = g.neighbors(i);
    if (nb.size() == 1 && nb[0].node > i && nb[0].multiplicity == 2 && g.degree(nb[0].node) == 2) ++cycles;
  }
  return cycles;
}

void write_edge_list(std::ostream& out, const Multigraph& g, std::uint64_t seed, bool compact) {
  out << "# nodes=" << g.node_count() << " stubs=" << g.stub_count() << " seed=" << seed << '\n';
  for (const EdgeRun& e : g.edges()) {
    if (compact) {
      out << e.u << ' ' << e.v << ' ' << e.multiplicity << '\n';
    } else {
      for (std::uint64_t c = 0; c < e.multiplicity; ++c) out << e.u << ' ' << e.v << '\n';
    }
  }
}

EdgeListFile read_edge_list(std::istream& in) {
  std::optional<std::size_t> nodes;
  std::optional<std::uint64_t> stubs;
  std::optional<std::uint64_t> seed;
  std::vector<EdgeRun> runs;
  bool counted = false;
  std::size_t largest = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string token;
      while (header >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::uint64_t value = std::stoull(token.substr(eq + 1));
        if (key == "nodes") nodes = value;
        else if (key == "stubs") stubs = value;
        else if (key == "seed") seed = value;
      }
      continue;
    }
    std::istringstream row(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    std::uint64_t multiplicity = 1;
    std::string extra;
    if (!(row >> u >> v))
      throw std::runtime_error("read_edge_list: malformed line " + std::to_string(line_no));
    if (row >> multiplicity) {
      counted = true;
    } else if (!row.eof()) {
      throw std::runtime_error("read_edge_list: malformed line " + std::to_string(line_no));
    }
    row.clear();
    if ((row >> extra) || multiplicity == 0)
      throw std::runtime_error("read_edge_list: malformed line " + std::to_string(line_no));
    if (u > std::numeric_limits<NodeId>::max() || v > std::numeric_limits<NodeId>::max())
      throw std::runtime_error("read_edge_list: node id too large on line " + std::to_string(line_no));
    runs.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), multiplicity});
    largest = std::max<std::size_t>(largest, std::max(u, v));
  }
  const std::size_t n = nodes.value_or(runs.empty() ? 0 : largest + 1);
  if (!runs.empty() && largest >= n)
    throw std::runtime_error("read_edge_list: node id exceeds header node count");
  if (counted) {
    // Counted lines carry no stub order; degrees follow from the runs.
    std::vector<Degree> degrees(n, 0);
    for (const EdgeRun& e : runs) {
      degrees[e.u] += e.multiplicity;
      degrees[e.v] += e.multiplicity;
    }
    Multigraph g(std::move(degrees), std::move(runs), false);
    if (stubs && *stubs != g.stub_count())
      throw std::runtime_error("read_edge_list: header stub count disagrees with edges");
    return {std::move(g), seed};
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(runs.size());
  for (const EdgeRun& e : runs) edges.emplace_back(e.u, e.v);
  Multigraph g = Multigraph::from_edge_list(n, edges);
  if (stubs && *stubs != g.stub_count())
    throw std::runtime_error("read_edge_list: header stub count disagrees with edges");
  return {std::move(g), seed};
}

}  // namespace confmodel
