#ifndef VMLAB_PAIRS_HPP
#define VMLAB_PAIRS_HPP

#include <cstddef>
#include <cstdint>
#include <utility>

namespace vmlab {

// Edge-set bitmasks over a vertex set {0..k-1} use colexicographic pair
// order: pair {i < j} has index j*(j-1)/2 + i. The same order is used by
// graph6, by GraphDistribution indexing and by the rank census.

constexpr std::size_t pair_count(std::size_t k) noexcept { return k == 0 ? 0 : k * (k - 1) / 2; }

constexpr std::size_t pair_index(std::size_t i, std::size_t j) noexcept {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

constexpr std::pair<std::size_t, std::size_t> pair_at(std::size_t index) noexcept {
  std::size_t j = 1;
  while ((j + 1) * j / 2 <= index) ++j;
  return {index - j * (j - 1) / 2, j};
}

// Ordered bipartite cells (l, r) with l in 0..ell-1 (left part) and
// r in 0..rr-1 (right part, the row index of the R x L biadjacency matrix)
// are indexed R-major: r * ell + l.
constexpr std::size_t cell_index(std::size_t l, std::size_t r, std::size_t ell) noexcept { return r * ell + l; }

}  // namespace vmlab

#endif  // VMLAB_PAIRS_HPP
