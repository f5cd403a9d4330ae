#ifndef VMLAB_BIPARTITE_HPP
#define VMLAB_BIPARTITE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "pairs.hpp"
#include "rng.hpp"

namespace vmlab {

/// Ordered bipartite graph (L, R, E). Stored as a Graph plus a side mask;
/// pivots exchange the parts of their two endpoints.
class OrderedBipartiteGraph {
 public:
  OrderedBipartiteGraph() = default;

  OrderedBipartiteGraph(std::size_t capacity, std::span<const Label> left, std::span<const Label> right)
      : g_(Graph::on_labels(capacity, concat(left, right))), left_(g_.words_per_row(), 0) {
    require(g_.order() == left.size() + right.size(), Errc::labels, "L and R must be disjoint and repeat-free");
    for (Label v : left) left_[v / 64] |= 1ULL << (v % 64);
  }

  /// Capacity defaults to one past the largest label.
  static OrderedBipartiteGraph make(std::span<const Label> left, std::span<const Label> right,
                                    std::span<const std::pair<Label, Label>> edges = {}) {
    std::size_t cap = 0;
    for (Label v : left) cap = std::max(cap, v + 1);
    for (Label v : right) cap = std::max(cap, v + 1);
    OrderedBipartiteGraph b(cap, left, right);
    for (auto [u, v] : edges) b.add_edge(u, v);
    return b;
  }

  std::size_t capacity() const noexcept { return g_.capacity(); }
  const Graph& graph() const noexcept { return g_; }
  bool live(Label v) const noexcept { return g_.live(v); }
  bool in_left(Label v) const noexcept { return g_.live(v) && ((left_[v / 64] >> (v % 64)) & 1U); }
  bool in_right(Label v) const noexcept { return g_.live(v) && !in_left(v); }

  LabelList left() const {
    LabelList out;
    for (Label v : g_.labels())
      if (in_left(v)) out.push_back(v);
    return out;
  }

  LabelList right() const {
    LabelList out;
    for (Label v : g_.labels())
      if (!in_left(v)) out.push_back(v);
    return out;
  }

  LabelList labels() const { return g_.labels(); }
  std::size_t order() const noexcept { return g_.order(); }

  bool has_edge(Label u, Label v) const { return g_.has_edge(u, v); }

  void add_edge(Label u, Label v) {
    check_cross(u, v);
    g_.add_edge(u, v);
  }

  void set_edge(Label u, Label v, bool present) {
    check_cross(u, v);
    g_.set_edge(u, v, present);
  }

  LabelList neighbours(Label v) const { return g_.neighbours(v); }

  /// Edge list as (l, r) pairs with l in L, sorted.
  std::vector<std::pair<Label, Label>> edges() const {
    std::vector<std::pair<Label, Label>> out;
    for (Label l : left())
      for (Label r : g_.neighbours(l)) out.emplace_back(l, r);
    return out;
  }

  /// Biadjacency matrix indexed R x L (ascending labels on both sides).
  BitMatrix biadjacency() const {
    const LabelList ls = left(), rs = right();
    BitMatrix m(rs.size(), ls.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < ls.size(); ++j)
        if (g_.has_edge(rs[i], ls[j])) m.set(i, j, true);
    return m;
  }

  /// Cell mask with bit r*ell + l for the l-th left and r-th right label.
  std::uint64_t cell_mask() const {
    const LabelList ls = left(), rs = right();
    require(ls.size() * rs.size() <= 64, Errc::range, "cell_mask needs |L||R| <= 64");
    std::uint64_t mask = 0;
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (std::size_t l = 0; l < ls.size(); ++l)
        if (g_.has_edge(rs[r], ls[l])) mask |= 1ULL << cell_index(l, r, ls.size());
    return mask;
  }

  void pivot_at(Label u, Label v) {
    require(g_.has_edge(u, v), Errc::no_edge, "ordered pivot needs an edge");
    g_.pivot_at(u, v);
    // u and v lie on opposite sides, so flipping both bits swaps their parts.
    left_[u / 64] ^= 1ULL << (u % 64);
    left_[v / 64] ^= 1ULL << (v % 64);
  }

  void remove_vertex(Label v) {
    g_.remove_vertex(v);
    left_[v / 64] &= ~(1ULL << (v % 64));
  }

  void toggle_biclique(std::span<const Label> s, std::span<const Label> t) {
    for (Label x : s) require(in_left(x), Errc::vertex, "biclique S must lie in L");
    for (Label y : t) require(in_right(y), Errc::vertex, "biclique T must lie in R");
    g_.toggle_biclique_words(g_.labels_to_words(s), g_.labels_to_words(t));
  }

  friend bool operator==(const OrderedBipartiteGraph& a, const OrderedBipartiteGraph& b) {
    return a.left() == b.left() && a.right() == b.right() && a.g_ == b.g_;
  }

 private:
  static LabelList concat(std::span<const Label> a, std::span<const Label> b) {
    LabelList out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  void check_cross(Label u, Label v) const {
    g_.check_live(u);
    g_.check_live(v);
    if (in_left(u) == in_left(v)) fail(Errc::precondition, "edges must join L and R");
  }

  Graph g_;
  std::vector<std::uint64_t> left_;
};

using Bipartite = OrderedBipartiteGraph;

inline OrderedBipartiteGraph pivot(OrderedBipartiteGraph b, Label u, Label v) {
  b.graph().check_live(u);
  b.graph().check_live(v);
  if (!b.has_edge(u, v)) fail(Errc::no_edge, "pivot on non-edge");
  b.pivot_at(u, v);
  return b;
}

inline OrderedBipartiteGraph attempted_pivot(OrderedBipartiteGraph b, Label u, Label v) {
  b.graph().check_live(u);
  b.graph().check_live(v);
  if (u != v && b.has_edge(u, v)) b.pivot_at(u, v);
  return b;
}

inline OrderedBipartiteGraph toggle_template(OrderedBipartiteGraph b, const Biclique& t) {
  b.toggle_biclique(t.s, t.t);
  return b;
}

inline OrderedBipartiteGraph delete_vertices(OrderedBipartiteGraph b, std::span<const Label> drop) {
  for (Label v : drop) b.remove_vertex(v);
  return b;
}

inline OrderedBipartiteGraph induced_subgraph(OrderedBipartiteGraph b, std::span<const Label> keep) {
  std::vector<bool> k(b.capacity(), false);
  for (Label v : keep) {
    b.graph().check_live(v);
    k[v] = true;
  }
  for (Label v : b.labels())
    if (!k[v]) b.remove_vertex(v);
  return b;
}

/// G x~ v_{i1}w_{i1} x~ ... over J in increasing index order.
inline OrderedBipartiteGraph build_GJ(OrderedBipartiteGraph b, std::span<const Label> vs, std::span<const Label> ws,
                                      std::span<const std::size_t> indices) {
  require(vs.size() == ws.size(), Errc::precondition, "paired base lists must have equal length");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    require(b.in_left(vs[i]), Errc::vertex, "v_i must lie in L");
    require(b.in_right(ws[i]), Errc::vertex, "w_i must lie in R");
  }
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), Errc::precondition,
          "J must not repeat indices");
  for (std::size_t i : sorted) {
    require(i < vs.size(), Errc::range, "index of J outside the base list");
    if (b.has_edge(vs[i], ws[i])) b.pivot_at(vs[i], ws[i]);
  }
  return b;
}

/// Uniform ordered bipartite graph with L = {0..ell-1}, R = {ell..ell+r-1};
/// one generator bit per cell in cell_index order.
inline OrderedBipartiteGraph sample_uniform_bipartite(std::size_t ell, std::size_t r, std::uint64_t seed) {
  LabelList ls(ell), rs(r);
  for (std::size_t i = 0; i < ell; ++i) ls[i] = i;
  for (std::size_t i = 0; i < r; ++i) rs[i] = ell + i;
  OrderedBipartiteGraph b(ell + r, ls, rs);
  CounterRng rng(seed);
  BitStream bits(rng);
  for (std::size_t rr = 0; rr < r; ++rr)
    for (std::size_t l = 0; l < ell; ++l)
      if (bits.next()) b.add_edge(l, ell + rr);
  return b;
}

/// Graph on L = {0..ell-1}, R = {ell..} from a cell mask.
inline OrderedBipartiteGraph bipartite_from_cells(std::size_t ell, std::size_t r, std::uint64_t cells) {
  LabelList ls(ell), rs(r);
  for (std::size_t i = 0; i < ell; ++i) ls[i] = i;
  for (std::size_t i = 0; i < r; ++i) rs[i] = ell + i;
  OrderedBipartiteGraph b(ell + r, ls, rs);
  for (std::size_t rr = 0; rr < r; ++rr)
    for (std::size_t l = 0; l < ell; ++l)
      if ((cells >> cell_index(l, rr, ell)) & 1U) b.add_edge(l, ell + rr);
  return b;
}

}  // namespace vmlab

#endif  // VMLAB_BIPARTITE_HPP
