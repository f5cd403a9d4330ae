#ifndef VMLAB_MINOR_SEARCH_HPP
#define VMLAB_MINOR_SEARCH_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "bipartite.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "ops.hpp"
#include "pairs.hpp"

namespace vmlab {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
inline constexpr std::size_t kDefaultOrbitCap = 2'000'000;

struct SearchOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;  // expanded recursion nodes per query
  std::size_t orbit_cap = kDefaultOrbitCap;        // states in any equivalence-orbit BFS
  std::size_t memo_cap = 4'000'000;                // visited states kept per query
};

namespace detail {

// ---------------------------------------------------------------------------
// Search state keys

struct StateKey {
  std::vector<std::uint64_t> words;  // live, left, then rows of live labels
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (auto w : k.words) h = CounterRng::mix(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

inline StateKey key_of(const PackedGraph& g, std::uint64_t left) {
  StateKey k;
  const std::uint64_t live = g.live();
  k.words.reserve(2 + static_cast<std::size_t>(std::popcount(live)));
  k.words.push_back(live);
  k.words.push_back(left & live);
  for (std::uint64_t x = live; x; x &= x - 1) k.words.push_back(g.row(static_cast<Label>(std::countr_zero(x))));
  return k;
}

struct Moves {
  bool complement = true;  // local complementations allowed
  bool sides = false;      // track an ordered bipartition (pivots flip parts)
};

inline void do_pivot(PackedGraph& g, std::uint64_t& left, Label u, Label v, const Moves& mv) {
  g.pivot_at(u, v);
  if (mv.sides) left ^= (1ULL << u) | (1ULL << v);
}

// ---------------------------------------------------------------------------
// Orbits under local complementation and/or pivots (BFS with parents)

struct OrbitNode {
  PackedGraph g;
  std::uint64_t left;
  std::size_t parent;
  Step step;  // step taking parent to this node (and back, as every move is an involution)
};

class Orbit {
 public:
  Orbit(const PackedGraph& start, std::uint64_t left, Moves mv, std::size_t cap) {
    nodes_.push_back({start, left & start.live(), 0, Step{}});
    index_.emplace(key_of(start, left), 0);
    for (std::size_t head = 0; head < nodes_.size(); ++head) {
      const OrbitNode cur = nodes_[head];
      const std::uint64_t live = cur.g.live();
      for (std::uint64_t x = live; x; x &= x - 1) {
        const Label v = static_cast<Label>(std::countr_zero(x));
        const std::uint64_t nb = cur.g.row(v);
        if (nb == 0) continue;
        if (mv.complement) {
          if (std::popcount(nb) >= 2) {
            PackedGraph h = cur.g;
            h.complement_at(v);
            visit(h, cur.left, head, Step::single(v), cap);
          }
        } else {
          for (std::uint64_t y = nb & ~((2ULL << v) - 1); y; y &= y - 1) {
            const Label u = static_cast<Label>(std::countr_zero(y));
            PackedGraph h = cur.g;
            std::uint64_t l = cur.left;
            do_pivot(h, l, v, u, mv);
            visit(h, l, head, Step::pair(v, u), cap);
          }
        }
      }
    }
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<OrbitNode>& nodes() const noexcept { return nodes_; }

  std::optional<std::size_t> find(const PackedGraph& g, std::uint64_t left) const {
    auto it = index_.find(key_of(g, left));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Steps taking node i back to the orbit's start.
  OpSequence path_to_start(std::size_t i) const {
    OpSequence out;
    while (i != 0) {
      out.push_back(nodes_[i].step);
      i = nodes_[i].parent;
    }
    return out;
  }

 private:
  void visit(const PackedGraph& h, std::uint64_t left, std::size_t parent, Step s, std::size_t cap) {
    auto [it, fresh] = index_.emplace(key_of(h, left), nodes_.size());
    if (!fresh) return;
    if (nodes_.size() >= cap) fail(Errc::cap, "equivalence orbit exceeds cap");
    nodes_.push_back({h, left & h.live(), parent, s});
  }

  std::vector<OrbitNode> nodes_;
  std::unordered_map<StateKey, std::size_t, StateKeyHash> index_;
};

// ---------------------------------------------------------------------------
// Local-equivalence classes of all labelled graphs on [k], by colex mask

inline std::uint64_t complement_mask(std::size_t k, std::uint64_t mask, std::size_t v) {
  std::uint64_t nb = 0;
  for (std::size_t u = 0; u < k; ++u)
    if (u != v && ((mask >> pair_index(u, v)) & 1U)) nb |= 1ULL << u;
  for (std::uint64_t x = nb; x; x &= x - 1) {
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(x));
    for (std::uint64_t y = x & (x - 1); y; y &= y - 1) {
      const std::size_t i = static_cast<std::size_t>(std::countr_zero(y));
      mask ^= 1ULL << pair_index(i, j);
    }
  }
  return mask;
}

class LocalClassTable {
 public:
  static constexpr std::size_t kMaxK = 7;

  static const LocalClassTable& of(std::size_t k) {
    if (k > kMaxK) fail(Errc::budget, "local-equivalence class table limited to k <= 7");
    static std::array<std::once_flag, kMaxK + 1> once;
    static std::array<LocalClassTable, kMaxK + 1> tables;
    std::call_once(once[k], [k] { tables[k].build(k); });
    return tables[k];
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t classes() const noexcept { return reps_.size(); }
  std::uint32_t class_of(std::uint64_t mask) const { return cls_[mask]; }
  /// Smallest colex mask in class c.
  std::uint64_t representative(std::uint32_t c) const { return reps_[c]; }

 private:
  void build(std::size_t k) {
    k_ = k;
    const std::uint64_t total = 1ULL << pair_count(k);
    constexpr std::uint32_t unset = ~0U;
    cls_.assign(total, unset);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t m = 0; m < total; ++m) {
      if (cls_[m] != unset) continue;
      const auto id = static_cast<std::uint32_t>(reps_.size());
      reps_.push_back(m);
      cls_[m] = id;
      queue.assign(1, m);
      while (!queue.empty()) {
        const std::uint64_t cur = queue.back();
        queue.pop_back();
        for (std::size_t v = 0; v < k; ++v) {
          const std::uint64_t nxt = complement_mask(k, cur, v);
          if (cls_[nxt] == unset) {
            cls_[nxt] = id;
            queue.push_back(nxt);
          }
        }
      }
    }
  }

  std::size_t k_ = 0;
  std::vector<std::uint32_t> cls_;
  std::vector<std::uint64_t> reps_;
};

// ---------------------------------------------------------------------------
// The deletion recursion: for the largest live label v outside the target,
// branch on G - v, G*v - v and G x vu - v with u the smallest neighbour.

class MinorEngine {
 public:
  MinorEngine(std::uint64_t target, Moves mv, const SearchOptions& opt) : target_(target), mv_(mv), opt_(opt) {}

  /// Calls leaf(g, left) on every reachable graph with live set == target;
  /// stops as soon as leaf returns true.
  template <class Leaf>
  bool run(const PackedGraph& g, std::uint64_t left, Leaf&& leaf) {
    visited_.clear();
    ops_.clear();
    dels_.clear();
    return rec(g, left, leaf);
  }

  const OpSequence& path_ops() const noexcept { return ops_; }
  const LabelList& path_deletions() const noexcept { return dels_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  template <class Leaf>
  bool rec(const PackedGraph& g, std::uint64_t left, Leaf& leaf) {
    if (++nodes_ > opt_.node_budget) fail(Errc::budget, "minor search node budget exhausted");
    const std::uint64_t rest = g.live() & ~target_;
    if (rest == 0) return leaf(g, left);
    if (visited_.size() < opt_.memo_cap) {
      if (!visited_.insert(key_of(g, left)).second) return false;
    }
    const Label v = static_cast<Label>(63 - std::countl_zero(rest));
    const std::uint64_t nb = g.row(v);
    const std::uint64_t vbit = 1ULL << v;

    dels_.push_back(v);
    {
      PackedGraph h = g;
      h.remove_vertex(v);
      if (rec(h, left & ~vbit, leaf)) return true;
    }
    if (mv_.complement && std::popcount(nb) >= 2) {
      PackedGraph h = g;
      h.complement_at(v);
      h.remove_vertex(v);
      ops_.push_back(Step::single(v));
      if (rec(h, left & ~vbit, leaf)) return true;
      ops_.pop_back();
    }
    if (nb != 0) {
      const Label u = static_cast<Label>(std::countr_zero(nb));
      PackedGraph h = g;
      std::uint64_t l = left;
      do_pivot(h, l, v, u, mv_);
      h.remove_vertex(v);
      ops_.push_back(Step::pair(v, u));
      if (rec(h, l & ~vbit, leaf)) return true;
      ops_.pop_back();
    }
    dels_.pop_back();
    return false;
  }

  std::uint64_t target_;
  Moves mv_;
  SearchOptions opt_;
  std::uint64_t nodes_ = 0;
  std::unordered_set<StateKey, StateKeyHash> visited_;
  OpSequence ops_;
  LabelList dels_;
};

inline std::uint64_t live_mask_checked(const Graph& g) {
  require(g.capacity() <= PackedGraph::kMax, Errc::range, "minor search supports labels below 64");
  const auto w = g.live_words();
  return w.empty() ? 0 : w[0];
}

inline std::optional<MinorWitness> search(const PackedGraph& g, std::uint64_t g_left, const PackedGraph& h,
                                   std::uint64_t h_left, Moves mv, const SearchOptions& opt) {
  const Orbit orbit(h, h_left, mv, opt.orbit_cap);
  MinorEngine engine(h.live(), mv, opt);
  std::optional<MinorWitness> out;
  engine.run(g, g_left, [&](const PackedGraph& leaf, std::uint64_t left) {
    const auto hit = orbit.find(leaf, left);
    if (!hit) return false;
    MinorWitness w;
    w.ops = engine.path_ops();
    for (const Step& s : orbit.path_to_start(*hit)) w.ops.push_back(s);
    w.deletions = engine.path_deletions();
    out = std::move(w);
    return true;
  });
  return out;
}

inline void check_label_subset(const Graph& g, const Graph& h) {
  for (Label v : h.labels())
    if (!g.live(v)) fail(Errc::labels, "label " + std::to_string(v) + " of H is not a label of G");
}

/// Pack h using g's label space (h's labels must be live in g).
inline PackedGraph pack_on(const Graph& h) {
  require(h.capacity() <= PackedGraph::kMax, Errc::range, "minor search supports labels below 64");
  return PackedGraph(h);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public API

/// Witness that H is a labelled vertex-minor of G, or nullopt if none exists.
inline std::optional<MinorWitness> is_vertex_minor(const Graph& g, const Graph& h, const SearchOptions& opt = {}) {
  detail::check_label_subset(g, h);
  detail::live_mask_checked(g);
  detail::live_mask_checked(h);
  return detail::search(PackedGraph(g), 0, detail::pack_on(h), 0, {true, false}, opt);
}

/// Witness that H is a labelled pivot-minor of G (unordered graphs).
inline std::optional<MinorWitness> is_pivot_minor(const Graph& g, const Graph& h, const SearchOptions& opt = {}) {
  detail::check_label_subset(g, h);
  detail::live_mask_checked(g);
  detail::live_mask_checked(h);
  return detail::search(PackedGraph(g), 0, detail::pack_on(h), 0, {false, false}, opt);
}

namespace detail {
inline std::uint64_t left_mask(const OrderedBipartiteGraph& b) {
  std::uint64_t m = 0;
  for (Label v : b.left()) m |= 1ULL << v;
  return m;
}
}  // namespace detail

/// Witness that H is a pivot-minor of G in the ordered sense: every
/// surviving label must end up in the same part as in H.
inline std::optional<MinorWitness> is_pivot_minor_ordered(const OrderedBipartiteGraph& g,
                                                          const OrderedBipartiteGraph& h,
                                                          const SearchOptions& opt = {}) {
  detail::check_label_subset(g.graph(), h.graph());
  detail::live_mask_checked(g.graph());
  detail::live_mask_checked(h.graph());
  return detail::search(PackedGraph(g.graph()), detail::left_mask(g), detail::pack_on(h.graph()),
                              detail::left_mask(h), {false, true}, opt);
}

/// All graphs reachable from G by local complementations.
inline std::vector<Graph> local_equivalence_orbit(const Graph& g, std::size_t cap = kDefaultOrbitCap) {
  detail::live_mask_checked(g);
  const detail::Orbit orbit(PackedGraph(g), 0, {true, false}, cap);
  std::vector<Graph> out;
  out.reserve(orbit.size());
  for (const auto& n : orbit.nodes()) out.push_back(n.g.to_graph());
  return out;
}

/// All graphs reachable from G by pivots.
inline std::vector<Graph> pivot_orbit(const Graph& g, std::size_t cap = kDefaultOrbitCap) {
  detail::live_mask_checked(g);
  const detail::Orbit orbit(PackedGraph(g), 0, {false, false}, cap);
  std::vector<Graph> out;
  out.reserve(orbit.size());
  for (const auto& n : orbit.nodes()) out.push_back(n.g.to_graph());
  return out;
}

struct UniversalityFailure {
  LabelList u;
  Graph h;
};
struct BudgetExceeded {
  LabelList u;  // the vertex set whose search ran out
};
struct Universal {};
using UniversalityResult = std::variant<Universal, UniversalityFailure, BudgetExceeded>;

namespace detail {

/// k-subsets of the sorted label list, lexicographic.
inline std::vector<LabelList> k_subsets(const LabelList& labels, std::size_t k) {
  std::vector<LabelList> out;
  const std::size_t n = labels.size();
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    LabelList s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = labels[idx[i]];
    out.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Outcome for one vertex set U: nullopt = all graphs reached, else the colex
// mask of the first unreached graph; the budget flag overrides both.
struct USetOutcome {
  bool budget = false;
  std::optional<std::uint64_t> missing;
};

inline USetOutcome check_uset(const PackedGraph& g, const LabelList& u, const LocalClassTable& table,
                              const SearchOptions& opt) {
  std::uint64_t target = 0;
  for (Label v : u) target |= 1ULL << v;
  std::vector<char> reached(table.classes(), 0);
  std::size_t left = table.classes();
  MinorEngine engine(target, {true, false}, opt);
  try {
    engine.run(g, 0, [&](const PackedGraph& leaf, std::uint64_t) {
      const std::uint32_t c = table.class_of(leaf.induced_mask(u));
      if (!reached[c]) {
        reached[c] = 1;
        --left;
      }
      return left == 0;
    });
  } catch (const Error& e) {
    if (e.code() != Errc::budget) throw;
    return {true, std::nullopt};
  }
  if (left == 0) return {};
  const std::uint64_t total = 1ULL << pair_count(u.size());
  for (std::uint64_t m = 0; m < total; ++m)
    if (!reached[table.class_of(m)]) return {false, m};
  return {};
}

}  // namespace detail

/// Is every graph on every k-subset of live labels a vertex-minor of G?
/// The node budget applies to each vertex set separately. With jobs > 1 the
/// vertex sets are split across threads; the reported failure is always the
/// first in lexicographic order of U.
inline UniversalityResult is_k_vm_universal(const Graph& g, std::size_t k, const SearchOptions& opt = {},
                                            unsigned jobs = 1) {
  detail::live_mask_checked(g);
  const LabelList labels = g.labels();
  require(k <= labels.size(), Errc::range, "k exceeds the number of live labels");
  const auto& table = detail::LocalClassTable::of(k);
  const PackedGraph pg(g);
  const std::vector<LabelList> sets = detail::k_subsets(labels, k);
  std::vector<detail::USetOutcome> outcomes(sets.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_bad{sets.size()};
  auto worker = [&] {
    for (std::size_t i = next++; i < sets.size(); i = next++) {
      if (i > first_bad.load()) continue;
      outcomes[i] = detail::check_uset(pg, sets[i], table, opt);
      if (outcomes[i].budget || outcomes[i].missing) {
        std::size_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  const std::size_t bad = first_bad.load();
  if (bad == sets.size()) return Universal{};
  if (outcomes[bad].budget) return BudgetExceeded{sets[bad]};
  Graph h = Graph::on_labels(g.capacity(), sets[bad]);
  const Graph canon = Graph::from_edge_mask(k, *outcomes[bad].missing);
  for (auto [i, j] : canon.edges()) h.add_edge(sets[bad][i], sets[bad][j]);
  return UniversalityFailure{sets[bad], h};
}

/// Number of local-equivalence classes of labelled graphs on k vertices.
inline std::size_t local_class_count(std::size_t k) { return detail::LocalClassTable::of(k).classes(); }

}  // namespace vmlab

#endif  // VMLAB_MINOR_SEARCH_HPP
