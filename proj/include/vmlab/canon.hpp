#ifndef VMLAB_CANON_HPP
#define VMLAB_CANON_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "pairs.hpp"

namespace vmlab {

// Small graphs on [n], n <= 11, as colex edge masks. Canonical labeling is
// colour refinement plus individualization; twins in the target cell are
// skipped because swapping two twins is an automorphism.

inline constexpr std::size_t kSmallGraphMax = 11;

using AdjRows = std::vector<std::uint32_t>;

inline AdjRows rows_of_mask(std::size_t n, std::uint64_t mask) {
  require(n <= kSmallGraphMax, Errc::range, "small-graph routines need n <= 11");
  AdjRows rows(n, 0);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((mask >> pair_index(i, j)) & 1U) {
        rows[i] |= 1U << j;
        rows[j] |= 1U << i;
      }
  return rows;
}

inline std::uint64_t mask_of_rows(const AdjRows& rows) {
  std::uint64_t m = 0;
  for (std::size_t j = 1; j < rows.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((rows[j] >> i) & 1U) m |= 1ULL << pair_index(i, j);
  return m;
}

namespace detail {

using Cells = std::vector<std::vector<std::size_t>>;

// Split cells by neighbour counts into every other cell until stable.
inline void refine(const AdjRows& rows, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t w = 0; w < cells.size() && !changed; ++w) {
      std::uint32_t wmask = 0;
      for (std::size_t v : cells[w]) wmask |= 1U << v;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() < 2) continue;
        auto deg = [&](std::size_t v) { return std::popcount(rows[v] & wmask); };
        auto& cell = cells[c];
        std::stable_sort(cell.begin(), cell.end(), [&](std::size_t a, std::size_t b) { return deg(a) < deg(b); });
        if (deg(cell.front()) == deg(cell.back())) continue;
        Cells parts;
        for (std::size_t v : cell) {
          if (parts.empty() || deg(parts.back().front()) != deg(v)) parts.emplace_back();
          parts.back().push_back(v);
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), parts.begin(), parts.end());
        changed = true;
        break;
      }
    }
  }
}

inline bool twins(const AdjRows& rows, std::size_t a, std::size_t b) {
  const std::uint32_t ab = (1U << a) | (1U << b);
  return (rows[a] & ~ab) == (rows[b] & ~ab);
}

inline void canon_search(const AdjRows& rows, Cells cells, std::uint64_t& best) {
  refine(rows, cells);
  auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
  if (target == cells.end()) {
    std::vector<std::size_t> pos(rows.size());
    for (std::size_t i = 0; i < cells.size(); ++i) pos[cells[i][0]] = i;
    std::uint64_t m = 0;
    for (std::size_t j = 1; j < rows.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if ((rows[j] >> i) & 1U) m |= 1ULL << pair_index(pos[i], pos[j]);
    best = std::min(best, m);
    return;
  }
  const std::size_t t = static_cast<std::size_t>(target - cells.begin());
  std::vector<std::size_t> tried;
  for (std::size_t v : cells[t]) {
    if (std::any_of(tried.begin(), tried.end(), [&](std::size_t u) { return twins(rows, u, v); })) continue;
    tried.push_back(v);
    Cells next = cells;
    auto& cell = next[t];
    cell.erase(std::find(cell.begin(), cell.end(), v));
    next.insert(next.begin() + static_cast<std::ptrdiff_t>(t), std::vector<std::size_t>{v});
    canon_search(rows, std::move(next), best);
  }
}

}  // namespace detail

/// Smallest colex mask over the relabelings explored by the search; equal for
/// two graphs iff they are isomorphic.
inline std::uint64_t canonical_mask(std::size_t n, std::uint64_t mask) {
  const AdjRows rows = rows_of_mask(n, mask);
  if (n == 0) return 0;
  detail::Cells cells(1);
  for (std::size_t v = 0; v < n; ++v) cells[0].push_back(v);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  detail::canon_search(rows, std::move(cells), best);
  return best;
}

/// Canonical form of a Graph (live labels relabeled to [n] ascending first).
inline std::uint64_t canonical_mask(const Graph& g) { return canonical_mask(g.order(), g.edge_mask()); }

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_mask(a) == canonical_mask(b);
}

/// One canonical mask per isomorphism class of n-vertex graphs, ascending.
/// Built by vertex augmentation from the (n-1)-vertex classes.
inline std::vector<std::uint64_t> graph_classes(std::size_t n) {
  require(n <= 9, Errc::budget, "isomorphism-class enumeration is limited to n <= 9");
  std::vector<std::uint64_t> level{0};
  for (std::size_t m = 1; m <= n; ++m) {
    std::unordered_set<std::uint64_t> seen;
    const std::size_t base = pair_count(m - 1);
    for (std::uint64_t g : level)
      for (std::uint64_t nb = 0; nb < (1ULL << (m - 1)); ++nb) seen.insert(canonical_mask(m, g | (nb << base)));
    level.assign(seen.begin(), seen.end());
    std::sort(level.begin(), level.end());
  }
  return level;
}

}  // namespace vmlab

#endif  // VMLAB_CANON_HPP
