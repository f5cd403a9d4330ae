#ifndef VMLAB_OPS_HPP
#define VMLAB_OPS_HPP

#include <algorithm>
#include <vector>

#include "bipartite.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace vmlab {

/// One step of an operation sequence: a singleton {a} (local complementation
/// at a) or a pair {a, b} (pivot on ab). Singletons store b == a.
struct Step {
  Label a = 0;
  Label b = 0;

  static Step single(Label v) { return {v, v}; }
  static Step pair(Label u, Label v) {
    require(u != v, Errc::precondition, "a pair step needs two distinct labels");
    return {std::min(u, v), std::max(u, v)};
  }

  bool is_pair() const noexcept { return a != b; }
  std::size_t size() const noexcept { return is_pair() ? 2 : 1; }
  bool contains(Label v) const noexcept { return v == a || v == b; }
  LabelList labels() const { return is_pair() ? LabelList{a, b} : LabelList{a}; }

  friend bool operator==(const Step&, const Step&) = default;
};

using OpSequence = std::vector<Step>;

inline void apply_step(Graph& g, const Step& s) {
  if (s.is_pair()) {
    g.check_live(s.a);
    g.check_live(s.b);
    if (!g.has_edge(s.a, s.b)) fail(Errc::no_edge, "pivot step on a non-edge");
    g.pivot_at(s.a, s.b);
  } else {
    g.complement_at(s.a);
  }
}

inline void apply_step(OrderedBipartiteGraph& b, const Step& s) {
  require(s.is_pair(), Errc::precondition, "ordered bipartite graphs only admit pivot steps");
  b.graph().check_live(s.a);
  b.graph().check_live(s.b);
  if (!b.has_edge(s.a, s.b)) fail(Errc::no_edge, "pivot step on a non-edge");
  b.pivot_at(s.a, s.b);
}

template <class G>
G apply_ops(G g, const OpSequence& ops) {
  for (const Step& s : ops) apply_step(g, s);
  return g;
}

/// G * v_1 * ... * v_s for a plain label sequence.
inline Graph apply_complementations(Graph g, std::span<const Label> seq) {
  for (Label v : seq) g.complement_at(v);
  return g;
}

/// Certificate that H is a vertex-minor (or pivot-minor) of G.
struct MinorWitness {
  OpSequence ops;
  LabelList deletions;

  friend bool operator==(const MinorWitness&, const MinorWitness&) = default;
};

/// Apply every op, then every deletion. Ops in a witness never touch a label
/// deleted before them, and deletion commutes with operations at other
/// vertices, so this equals the interleaved replay.
template <class G>
G replay(G g, const MinorWitness& w) {
  g = apply_ops(std::move(g), w.ops);
  for (Label v : w.deletions) g.remove_vertex(v);
  return g;
}

}  // namespace vmlab

#endif  // VMLAB_OPS_HPP
