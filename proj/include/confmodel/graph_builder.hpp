#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "confmodel/degree_sequence.hpp"
#include "confmodel/multigraph.hpp"

namespace confmodel {

/// Largest L_N that build() pairs stub by stub (three 64-bit words per stub).
inline constexpr std::uint64_t kMaxMaterializedStubs = std::uint64_t{1} << 26;

/// L_N after the odd-sum fix. Throws std::overflow_error if the sum does not
/// fit in 64 bits.
std::uint64_t padded_stub_count(const DegreeSequence& seq);

/// Uniform stub pairing. An odd degree sum gives the last node one extra stub.
/// The lowest-numbered free stub is then repeatedly matched to a uniformly
/// chosen other free stub, which yields the uniform law on perfect matchings.
/// Throws std::length_error above kMaxMaterializedStubs.
Multigraph build(const DegreeSequence& seq, std::uint64_t seed);

/// Same law as build() without materializing stubs, for sequences whose L_N
/// is far beyond memory (infinite-mean degrees). Nodes are resolved in order
/// of decreasing degree: the number of self-loops at the current node is drawn
/// from its exact conditional law, and its remaining stubs are spread over the
/// other free stubs by a multivariate hypergeometric draw. The result carries
/// no stub order.
Multigraph build_aggregated(const DegreeSequence& seq, std::uint64_t seed);

/// build() when L_N fits, build_aggregated() otherwise.
Multigraph build_auto(const DegreeSequence& seq, std::uint64_t seed);

/// Number of self-loop edges, each parallel loop counted once.
std::uint64_t count_self_loops(const Multigraph& g);

/// Pairs {i, j}, i != j, of degree-2 nodes joined by exactly two parallel edges.
std::uint64_t count_two_cycles(const Multigraph& g);

/// `# nodes=<n> stubs=<L_N> seed=<seed>` followed by one `u v` line per edge,
/// parallel edges repeated. With `compact`, each run of parallel edges is one
/// `u v multiplicity` line instead, which keeps heavy-tailed graphs writable.
void write_edge_list(std::ostream& out, const Multigraph& g, std::uint64_t seed, bool compact = false);

struct EdgeListFile {
  Multigraph graph;
  std::optional<std::uint64_t> seed;
};

/// Parses write_edge_list output in either form. Without a header the node
/// count is one more than the largest id seen. Counted lines drop stub order.
EdgeListFile read_edge_list(std::istream& in);

}  // namespace confmodel
