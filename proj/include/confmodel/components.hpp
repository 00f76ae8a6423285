#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "confmodel/multigraph.hpp"

namespace confmodel {

/// Component ids are ranks: id 0 is the largest component, ties broken by the
/// smallest member node.
struct ComponentSummary {
  std::vector<std::uint32_t> assignment;
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
};

struct GiantStats {
  std::size_t largest = 0;
  std::size_t second = 0;
  std::size_t complement = 0;
  /// Fraction of nodes in components of size >= gamma.
  double q_hat = 0.0;
  double gamma = 1.0;
};

ComponentSummary component_summary(const Multigraph& g);

GiantStats giant_stats(const ComponentSummary& s, double gamma);

bool is_connected(const ComponentSummary& s);

/// k for every component that is a simple star: a centre of degree k with k
/// distinct degree-1 leaves. An isolated edge counts as k = 1. Sorted ascending.
std::vector<std::uint64_t> find_star_components(const Multigraph& g);

}  // namespace confmodel
