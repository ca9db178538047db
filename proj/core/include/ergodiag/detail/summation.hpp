#pragma once

#include <cstddef>
#include <span>

namespace ergodiag::detail {

// Pairwise (cascade) summation in ascending index order. The split points
// depend only on the length, so results are reproducible everywhere.
inline double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kLeaf = 8;
  if (xs.size() <= kLeaf) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace ergodiag::detail
