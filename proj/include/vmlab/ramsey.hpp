#ifndef VMLAB_RAMSEY_HPP
#define VMLAB_RAMSEY_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <unordered_set>
#include <vector>

#include "canon.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "minor_search.hpp"
#include "rng.hpp"

namespace vmlab {

inline constexpr std::size_t kOrbitEngineMaxN = 10;
inline constexpr std::size_t kRamseyMaxK = 3;

// ---------------------------------------------------------------------------
// Small-graph primitives on adjacency rows

inline std::size_t independence_number(const AdjRows& rows, std::uint32_t cand) {
  if (cand == 0) return 0;
  const std::size_t v = static_cast<std::size_t>(std::countr_zero(cand));
  const std::uint32_t rest = cand & ~(1U << v);
  // v isolated inside cand: always take it
  if ((rows[v] & rest) == 0) return 1 + independence_number(rows, rest);
  return std::max(independence_number(rows, rest), 1 + independence_number(rows, rest & ~rows[v]));
}

inline std::size_t independence_number(const AdjRows& rows) {
  return independence_number(rows, rows.empty() ? 0U : static_cast<std::uint32_t>((1ULL << rows.size()) - 1));
}

inline AdjRows complement_rows(const AdjRows& rows) {
  AdjRows out(rows.size());
  const std::uint32_t full = static_cast<std::uint32_t>((1ULL << rows.size()) - 1);
  for (std::size_t v = 0; v < rows.size(); ++v) out[v] = full & ~rows[v] & ~(1U << v);
  return out;
}

inline std::size_t clique_number(const AdjRows& rows) { return independence_number(complement_rows(rows)); }

inline void local_complement_rows(AdjRows& rows, std::size_t v) {
  const std::uint32_t nb = rows[v];
  for (std::uint32_t m = nb; m; m &= m - 1) {
    const std::size_t u = static_cast<std::size_t>(std::countr_zero(m));
    rows[u] ^= nb & ~(1U << u);
  }
}

/// Breadth-first walk over the local-equivalence (or pivot) orbit of a small
/// graph; stops early and returns true once `pred` holds.
inline bool orbit_any(std::size_t n, std::uint64_t mask, bool pivots_only,
                      const std::function<bool(const AdjRows&)>& pred) {
  require(n <= kOrbitEngineMaxN, Errc::range, "orbit engine needs n <= 10");
  std::unordered_set<std::uint64_t> seen{mask};
  std::vector<AdjRows> todo{rows_of_mask(n, mask)};
  while (!todo.empty()) {
    AdjRows cur = std::move(todo.back());
    todo.pop_back();
    if (pred(cur)) return true;
    auto push = [&](AdjRows next) {
      if (seen.insert(mask_of_rows(next)).second) todo.push_back(std::move(next));
    };
    for (std::size_t v = 0; v < n; ++v) {
      if (!pivots_only) {
        AdjRows next = cur;
        local_complement_rows(next, v);
        push(std::move(next));
        continue;
      }
      for (std::size_t w = v + 1; w < n; ++w)
        if ((cur[v] >> w) & 1U) {
          AdjRows next = cur;
          local_complement_rows(next, v);
          local_complement_rows(next, w);
          local_complement_rows(next, v);
          push(std::move(next));
        }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Containment tests

enum class VmEngine { orbit, recursion };

/// Does G contain the independent set on some k of its vertices as a vertex-minor?
/// orbit: some locally equivalent graph has an independent k-set.
/// recursion: the minor search on every k-subset.
inline bool contains_independent_vm(const Graph& g, std::size_t k, VmEngine engine = VmEngine::orbit,
                                    const SearchOptions& opt = {}) {
  const LabelList labels = g.labels();
  if (k > labels.size()) return false;
  if (engine == VmEngine::orbit)
    return orbit_any(labels.size(), g.edge_mask(), false,
                     [k](const AdjRows& rows) { return independence_number(rows) >= k; });
  for (const LabelList& u : detail::k_subsets(labels, k))
    if (is_vertex_minor(g, Graph::on_labels(g.capacity(), u), opt)) return true;
  return false;
}

inline bool contains_independent_vm(std::size_t n, std::uint64_t mask, std::size_t k) {
  return k <= n && orbit_any(n, mask, false, [k](const AdjRows& rows) { return independence_number(rows) >= k; });
}

/// Does G contain a k-clique or independent k-set as a pivot-minor?
inline bool contains_clique_or_independent_pm(std::size_t n, std::uint64_t mask, std::size_t k) {
  return k <= n && orbit_any(n, mask, true, [k](const AdjRows& rows) {
           return independence_number(rows) >= k || clique_number(rows) >= k;
         });
}

inline bool contains_clique_or_independent_pm(const Graph& g, std::size_t k) {
  return contains_clique_or_independent_pm(g.order(), g.edge_mask(), k);
}

// ---------------------------------------------------------------------------
// Exhaustive Ramsey-type numbers

/// Least n such that every n-vertex graph has the property, plus the
/// isomorphism classes on n-1 vertices that lack it.
struct RamseyResult {
  std::size_t k = 0;
  std::size_t value = 0;
  std::vector<std::uint64_t> certificates;  // canonical masks on value-1 vertices
};

using SmallGraphProperty = std::function<bool(std::size_t, std::uint64_t)>;

/// Classes of n-vertex graphs failing `has`, in canonical-mask order.
inline std::vector<std::uint64_t> failing_classes(std::size_t n, const SmallGraphProperty& has, unsigned jobs = 1) {
  const std::vector<std::uint64_t> classes = graph_classes(n);
  std::vector<char> ok(classes.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < classes.size(); i = next++) ok[i] = has(n, classes[i]) ? 1 : 0;
  };
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!ok[i]) out.push_back(classes[i]);
  return out;
}

inline RamseyResult scan_ramsey(std::size_t k, std::size_t n_max, const SmallGraphProperty& has, unsigned jobs) {
  RamseyResult res{k, 0, {}};
  std::vector<std::uint64_t> prev;
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto bad = failing_classes(n, has, jobs);
    if (bad.empty()) {
      res.value = n;
      res.certificates = std::move(prev);
      return res;
    }
    prev = std::move(bad);
  }
  fail(Errc::budget, "Ramsey scan reached its vertex ceiling");
}

/// R_vm(k): least n such that every n-vertex graph has I_k as a vertex-minor.
inline RamseyResult vm_ramsey(std::size_t k, unsigned jobs = 1) {
  if (k > kRamseyMaxK) fail(Errc::budget, "exhaustive R_vm is limited to k <= 3");
  return scan_ramsey(k, 8, [k](std::size_t n, std::uint64_t m) { return contains_independent_vm(n, m, k); }, jobs);
}

/// R_piv(k): least n such that every n-vertex graph has K_k or I_k as a pivot-minor.
inline RamseyResult pm_ramsey(std::size_t k, unsigned jobs = 1) {
  if (k > kRamseyMaxK) fail(Errc::budget, "exhaustive R_piv is limited to k <= 3");
  return scan_ramsey(k, 8, [k](std::size_t n, std::uint64_t m) { return contains_clique_or_independent_pm(n, m, k); },
                     jobs);
}

/// Classical diagonal Ramsey number R(k) by the same scan.
inline RamseyResult classical_ramsey(std::size_t k, unsigned jobs = 1) {
  if (k > kRamseyMaxK) fail(Errc::budget, "exhaustive R(k) is limited to k <= 3");
  return scan_ramsey(k, 8,
                     [k](std::size_t n, std::uint64_t m) {
                       const AdjRows rows = rows_of_mask(n, m);
                       return k <= n && (independence_number(rows) >= k || clique_number(rows) >= k);
                     },
                     jobs);
}

// ---------------------------------------------------------------------------
// Structure of graphs without a large independent vertex-minor

/// For every graph G' locally equivalent to G and every independent set U of
/// G' of the largest size found anywhere in the orbit, the classes
/// V_S = {v outside U : N(v) & U = S} satisfy |V_0| = 0 and |V_S| <= min(2, |S|).
inline bool satisfies_partition_bounds(std::size_t n, std::uint64_t mask) {
  require(n <= kOrbitEngineMaxN, Errc::range, "orbit engine needs n <= 10");
  std::vector<AdjRows> orbit;
  std::size_t alpha = 0;
  orbit_any(n, mask, false, [&](const AdjRows& rows) {
    orbit.push_back(rows);
    alpha = std::max(alpha, independence_number(rows));
    return false;
  });
  for (const AdjRows& rows : orbit)
    for (std::uint32_t u = 0; u < (1U << n); ++u) {
      if (static_cast<std::size_t>(std::popcount(u)) != alpha) continue;
      bool indep = true;
      for (std::uint32_t m = u; m && indep; m &= m - 1) indep = (rows[static_cast<std::size_t>(std::countr_zero(m))] & u) == 0;
      if (!indep) continue;
      std::vector<std::size_t> count(1U << n, 0);
      for (std::size_t v = 0; v < n; ++v)
        if (!((u >> v) & 1U)) {
          const std::uint32_t s = rows[v] & u;
          const std::size_t cap = std::min<std::size_t>(2, static_cast<std::size_t>(std::popcount(s)));
          if (++count[s] > cap) return false;
        }
    }
  return true;
}

/// Upper bounds 2^k - 1 on R_vm(k) and (k-1)(2^k - 1) + 1 on R_piv(k).
inline std::uint64_t vm_ramsey_upper_bound(std::size_t k) {
  require(k < 63, Errc::range, "k too large");
  return (1ULL << k) - 1;
}

inline std::uint64_t pm_ramsey_upper_bound(std::size_t k) {
  require(k < 32, Errc::range, "k too large");
  return k == 0 ? 1 : (k - 1) * ((1ULL << k) - 1) + 1;
}

/// k used for the random lower-bound check: ceil(1.05 * sqrt(2 log2(3) n)).
inline std::size_t random_lower_bound_k(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(1.05 * std::sqrt(2.0 * std::log2(3.0) * static_cast<double>(n))));
}

/// Number of G(n, 1/2) samples (trial seeds under `seed`) that contain I_k as
/// a vertex-minor.
inline std::size_t count_independent_vm_samples(std::size_t n, std::size_t k, std::size_t trials,
                                                std::uint64_t seed) {
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t)
    if (contains_independent_vm(n, sample_uniform_graph(n, trial_seed(seed, t)).edge_mask(), k)) ++hits;
  return hits;
}

}  // namespace vmlab

#endif  // VMLAB_RAMSEY_HPP
