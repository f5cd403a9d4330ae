#ifndef VMLAB_REORDER_HPP
#define VMLAB_REORDER_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "ops.hpp"

namespace vmlab {

using PairList = std::vector<std::pair<Label, Label>>;

inline constexpr std::size_t kGadgetMaxVhat = 4;
inline constexpr std::size_t kGadgetReuseMaxVhat = 3;
inline constexpr std::uint64_t kReorderNodeBudget = 1'000'000;

// ---------------------------------------------------------------------------
// Property checks

/// (II): the steps are pairwise disjoint.
inline bool steps_disjoint(const OpSequence& ops) {
  std::vector<Label> seen;
  for (const Step& s : ops)
    for (Label v : s.labels()) {
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
      seen.push_back(v);
    }
  return true;
}

/// Labels occurring exactly once in a flat label list.
inline LabelList once_labels(std::span<const Label> seq) {
  std::map<Label, int> count;
  for (Label v : seq) ++count[v];
  LabelList out;
  for (auto [v, c] : count)
    if (c == 1) out.push_back(v);
  return out;
}

inline LabelList flatten(const PairList& pairs) {
  LabelList out;
  for (auto [a, b] : pairs) {
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

/// (III): every label appearing exactly once in `seq` lies in some step.
inline bool covers_once_labels(const OpSequence& ops, std::span<const Label> seq) {
  for (Label v : once_labels(seq))
    if (std::none_of(ops.begin(), ops.end(), [v](const Step& s) { return s.contains(v); })) return false;
  return true;
}

/// (I) for plain graphs: G o (x_i) - Vhat == G * seq - Vhat.
inline bool same_effect_outside(const Graph& g, std::span<const Label> vhat, std::span<const Label> seq,
                                const OpSequence& ops) {
  Graph lhs = apply_ops(g, ops);
  Graph rhs = apply_complementations(g, seq);
  return delete_vertices(std::move(lhs), vhat) == delete_vertices(std::move(rhs), vhat);
}

inline OrderedBipartiteGraph apply_pairs(OrderedBipartiteGraph b, const PairList& seq) {
  for (auto [u, v] : seq) {
    b.graph().check_live(u);
    b.graph().check_live(v);
    if (!b.has_edge(u, v)) fail(Errc::no_edge, "pivot sequence is undefined at a step");
    b.pivot_at(u, v);
  }
  return b;
}

/// (I) for ordered bipartite graphs.
inline bool same_effect_outside(const OrderedBipartiteGraph& g, std::span<const Label> vhat, const PairList& seq,
                                const OpSequence& ops) {
  OrderedBipartiteGraph lhs = apply_ops(g, ops);
  OrderedBipartiteGraph rhs = apply_pairs(g, seq);
  return delete_vertices(std::move(lhs), vhat) == delete_vertices(std::move(rhs), vhat);
}

namespace detail {

// Rewrites a solution (y') for G x vw - v with special vertex w into one for
// G with special vertex v. y' satisfies one of: w absent; w in y'_1;
// y'_1 = {u}, y'_2 = {w}.
inline OpSequence lift_pivot_case(Label v, Label w, const OpSequence& sub) {
  OpSequence out;
  const bool has_w = std::any_of(sub.begin(), sub.end(), [w](const Step& s) { return s.contains(w); });
  if (!has_w) {
    out.push_back(Step::pair(v, w));
    out.insert(out.end(), sub.begin(), sub.end());
  } else if (sub[0] == Step::single(w)) {
    // G x vw * w = G * w * v
    out.push_back(Step::single(w));
    out.push_back(Step::single(v));
    out.insert(out.end(), sub.begin() + 1, sub.end());
  } else if (sub[0].is_pair() && sub[0].contains(w)) {
    // G x vw x wu = G x vu
    const Label u = sub[0].a == w ? sub[0].b : sub[0].a;
    out.push_back(Step::pair(v, u));
    out.insert(out.end(), sub.begin() + 1, sub.end());
  } else if (sub.size() >= 2 && !sub[0].is_pair() && sub[1] == Step::single(w)) {
    // G x vw * u * w = G * u * v
    out.push_back(sub[0]);
    out.push_back(Step::single(v));
    out.insert(out.end(), sub.begin() + 2, sub.end());
  } else {
    fail(Errc::precondition, "reordering sub-result violates the special-vertex shape");
  }
  return out;
}

template <class G>
class Reorderer {
 public:
  Reorderer(const G& target, bool complementations, std::uint64_t budget)
      : target_(target), complementations_(complementations), budget_(budget) {}

  /// Enumerates solutions for (g, vhat) with special vertex `v`; emit returns
  /// true to stop. Returns true iff stopped.
  using Emit = std::function<bool(const OpSequence&)>;

  bool solve(const G& g, LabelList vhat, Label v, const Emit& emit) {
    if (++nodes_ > budget_) fail(Errc::budget, "reordering search budget exhausted");
    if (vhat.empty()) return g == target_ ? emit(OpSequence{}) : false;
    vhat.erase(std::find(vhat.begin(), vhat.end(), v));
    const Label next = vhat.empty() ? 0 : vhat.back();

    {
      G h = g;
      h.remove_vertex(v);
      if (solve(h, vhat, next, emit)) return true;
    }
    if (complementations_) {
      if constexpr (std::is_same_v<G, Graph>) {
        G h = g;
        h.complement_at(v);
        h.remove_vertex(v);
        const Emit prepend = [&](const OpSequence& sub) {
          OpSequence out{Step::single(v)};
          out.insert(out.end(), sub.begin(), sub.end());
          return emit(out);
        };
        if (solve(h, vhat, next, prepend)) return true;
      }
    }
    for (Label w : vhat) {
      if (!g.has_edge(v, w)) continue;
      G h = g;
      h.pivot_at(v, w);
      h.remove_vertex(v);
      const Emit lift = [&](const OpSequence& sub) { return emit(lift_pivot_case(v, w, sub)); };
      if (solve(h, vhat, w, lift)) return true;
    }
    return false;
  }

 private:
  const G& target_;
  bool complementations_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

inline LabelList sorted_unique(std::span<const Label> xs) {
  LabelList out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class G>
std::optional<OpSequence> first_covering(const G& g, const LabelList& vhat, const G& target,
                                         std::span<const Label> flat_seq, bool complementations,
                                         std::uint64_t budget) {
  Reorderer<G> r(target, complementations, budget);
  std::optional<OpSequence> found;
  G h = g;
  r.solve(h, vhat, vhat.back(), [&](const OpSequence& ops) {
    if (!covers_once_labels(ops, flat_seq)) return false;
    found = ops;
    return true;
  });
  return found;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gadget

/// Ghat on its own labels plus one P3 copy per attachment pattern p in
/// [0, 2^{3|Vhat|}). Copy p uses fresh labels base+3p, base+3p+1, base+3p+2
/// (base = Ghat's capacity) with path edges 0-1 and 1-2; bit a*|Vhat| + j of p
/// joins path vertex a to the j-th smallest label of Ghat.
inline Graph build_gadget(const Graph& ghat) {
  const LabelList vh = ghat.labels();
  const std::size_t k = vh.size();
  if (k > kGadgetMaxVhat) fail(Errc::range, "gadget size ceiling is |Vhat| <= 4");
  const std::size_t patterns = std::size_t{1} << (3 * k);
  const std::size_t base = ghat.capacity();
  LabelList all = vh;
  for (std::size_t i = 0; i < 3 * patterns; ++i) all.push_back(base + i);
  Graph g = Graph::on_labels(base + 3 * patterns, all);
  for (auto [a, b] : ghat.edges()) g.add_edge(a, b);
  for (std::size_t p = 0; p < patterns; ++p) {
    const Label x = base + 3 * p;
    g.add_edge(x, x + 1);
    g.add_edge(x + 1, x + 2);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t j = 0; j < k; ++j)
        if ((p >> (a * k + j)) & 1U) g.add_edge(x + a, vh[j]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reordering

/// Pairwise-disjoint singletons/pairs (x_i) from Vhat with
///   (I)   G o x_1 o ... o x_r - Vhat = G * seq - Vhat,
///   (II)  the x_i pairwise disjoint,
///   (III) every label appearing exactly once in seq lies in some x_i.
/// Vhat vertices are eliminated in descending label order; cases are tried in
/// the order delete, complement, pivot (neighbours ascending) and the first
/// output satisfying (III) is returned. If none does, the gadget-derived
/// sequence for G[Vhat] is used (|Vhat| <= 3).
inline OpSequence reorder_sequence(const Graph& g, std::span<const Label> vhat_in, std::span<const Label> seq,
                                   std::uint64_t budget = kReorderNodeBudget);

inline OpSequence reorder_via_gadget(const Graph& ghat, std::span<const Label> seq,
                                     std::uint64_t budget = kReorderNodeBudget) {
  const LabelList vh = ghat.labels();
  if (vh.size() > kGadgetReuseMaxVhat) fail(Errc::range, "gadget reuse is limited to |Vhat| <= 3");
  for (Label v : seq) require(ghat.live(v), Errc::vertex, "sequence label outside Vhat");
  if (vh.empty()) return {};
  const Graph gadget = build_gadget(ghat);
  const Graph target = delete_vertices(apply_complementations(gadget, seq), vh);
  auto ops = detail::first_covering(gadget, vh, target, seq, true, budget);
  if (!ops) fail(Errc::precondition, "no reordering found on the gadget");
  return *ops;
}

inline OpSequence reorder_sequence(const Graph& g, std::span<const Label> vhat_in, std::span<const Label> seq,
                                   std::uint64_t budget) {
  const LabelList vhat = detail::sorted_unique(vhat_in);
  for (Label v : vhat) g.check_live(v);
  for (Label v : seq)
    require(std::binary_search(vhat.begin(), vhat.end(), v), Errc::precondition, "seq must lie inside Vhat");
  if (vhat.empty()) return {};
  const Graph target = delete_vertices(apply_complementations(g, seq), vhat);
  if (auto ops = detail::first_covering(g, vhat, target, seq, true, budget)) return *ops;
  if (vhat.size() <= kGadgetReuseMaxVhat) return reorder_via_gadget(induced_subgraph(g, vhat), seq, budget);
  fail(Errc::precondition, "no per-graph reordering satisfies the coverage property");
}

/// Bipartite analogue: seq is a pivot-pair list inside Vhat (each pivot must
/// be defined when applied); the output is pairwise-disjoint pivot pairs.
/// Coverage counts endpoint occurrences across all pairs of seq.
inline OpSequence reorder_sequence(const OrderedBipartiteGraph& g, std::span<const Label> vhat_in,
                                   const PairList& seq, std::uint64_t budget = kReorderNodeBudget) {
  const LabelList vhat = detail::sorted_unique(vhat_in);
  for (Label v : vhat) g.graph().check_live(v);
  const LabelList flat = flatten(seq);
  for (Label v : flat)
    require(std::binary_search(vhat.begin(), vhat.end(), v), Errc::precondition, "seq must lie inside Vhat");
  if (vhat.empty()) return {};
  const OrderedBipartiteGraph target = delete_vertices(apply_pairs(g, seq), vhat);
  if (auto ops = detail::first_covering(g, vhat, target, flat, false, budget)) return *ops;
  fail(Errc::precondition, "no bipartite reordering satisfies the coverage property");
}

}  // namespace vmlab

#endif  // VMLAB_REORDER_HPP
