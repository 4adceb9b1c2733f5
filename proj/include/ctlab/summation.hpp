#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace ctlab {

// Fixed-order pairwise summation. The split points depend only on the
// length, so the result is bit-identical for identical inputs no matter
// how the caller schedules the work that produced them.
template <typename T>
T cascade_sum(std::span<const T> values) {
  constexpr std::size_t kLeaf = 32;
  const std::size_t n = values.size();
  if (n <= kLeaf) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  return cascade_sum(values.first(half)) + cascade_sum(values.subspan(half));
}

/// Composite trapezoid weight for node k of an n-node uniform grid.
inline double trapezoid_weight(std::size_t k, std::size_t n, double h) {
  return (k == 0 || k + 1 == n) ? 0.5 * h : h;
}

}  // namespace ctlab
