#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace confmodel {

/// Degrees D_1..D_n of the nodes, all >= 1.
struct DegreeSequence {
  std::vector<std::uint64_t> degrees;

  std::size_t size() const { return degrees.size(); }
};

}  // namespace confmodel
