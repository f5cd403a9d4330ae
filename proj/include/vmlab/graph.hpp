#ifndef VMLAB_GRAPH_HPP
#define VMLAB_GRAPH_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "f2.hpp"
#include "pairs.hpp"
#include "rng.hpp"

namespace vmlab {

using Label = std::size_t;
using LabelList = std::vector<Label>;

/// Simple labelled graph over label space [0, capacity). Deleting a vertex
/// clears its bit in the live mask; no relabelling ever happens, so labels
/// stay meaningful against the original graph.
class Graph {
 public:
  Graph() = default;

  /// n live labels 0..n-1, no edges.
  explicit Graph(std::size_t n) : n_(n), wpr_(f2::words_for(n)), rows_(n * wpr_, 0), live_(wpr_, 0) {
    for (std::size_t v = 0; v < n; ++v) live_[v / 64] |= 1ULL << (v % 64);
  }

  /// Label space [0, capacity) with only `labels` live.
  static Graph on_labels(std::size_t capacity, std::span<const Label> labels) {
    Graph g(capacity);
    std::fill(g.live_.begin(), g.live_.end(), 0);
    for (Label v : labels) {
      require(v < capacity, Errc::vertex, "label outside capacity");
      g.live_[v / 64] |= 1ULL << (v % 64);
    }
    return g;
  }

  /// Graph on [k] from a colex edge mask (k <= 64 so the mask fits pair_count(k) <= 64 bits only for k <= 11).
  static Graph from_edge_mask(std::size_t k, std::uint64_t mask) {
    require(pair_count(k) <= 64, Errc::range, "edge mask too short for k");
    Graph g(k);
    for (std::size_t idx = 0; idx < pair_count(k); ++idx)
      if ((mask >> idx) & 1U) {
        auto [i, j] = pair_at(idx);
        g.set_edge_unchecked(i, j, true);
      }
    return g;
  }

  static Graph from_edges(std::size_t n, std::span<const std::pair<Label, Label>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  std::size_t capacity() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return wpr_; }

  bool live(Label v) const noexcept { return v < n_ && ((live_[v / 64] >> (v % 64)) & 1U); }

  std::size_t order() const noexcept {
    std::size_t c = 0;
    for (auto w : live_) c += std::popcount(w);
    return c;
  }

  LabelList labels() const { return bits_to_labels(live_); }

  std::span<const std::uint64_t> live_words() const noexcept { return live_; }

  bool has_edge(Label u, Label v) const {
    check_live(u);
    check_live(v);
    return bit(u, v);
  }

  void add_edge(Label u, Label v) { set_edge(u, v, true); }
  void remove_edge(Label u, Label v) { set_edge(u, v, false); }
  void toggle_edge(Label u, Label v) { set_edge(u, v, !has_edge(u, v)); }

  void set_edge(Label u, Label v, bool present) {
    check_live(u);
    check_live(v);
    require(u != v, Errc::vertex, "self-loops are not allowed");
    set_edge_unchecked(u, v, present);
  }

  /// Neighbourhood of v as packed words over the label space.
  std::span<const std::uint64_t> row(Label v) const {
    check_live(v);
    return {rows_.data() + v * wpr_, wpr_};
  }

  LabelList neighbours(Label v) const { return bits_to_labels(row(v)); }

  std::size_t degree(Label v) const {
    std::size_t c = 0;
    for (auto w : row(v)) c += std::popcount(w);
    return c;
  }

  std::size_t edge_count() const noexcept {
    std::size_t c = 0;
    for (auto w : rows_) c += std::popcount(w);
    return c / 2;
  }

  /// Edge list with u < v, sorted.
  std::vector<std::pair<Label, Label>> edges() const {
    std::vector<std::pair<Label, Label>> out;
    for (Label u : labels())
      for (Label v : neighbours(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Adjacency matrix over the live labels in ascending order.
  BitMatrix adjacency() const {
    const LabelList ls = labels();
    BitMatrix m(ls.size(), ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = 0; j < ls.size(); ++j)
        if (bit(ls[i], ls[j])) m.set(i, j, true);
    return m;
  }

  /// Colex edge mask over the live labels in ascending order (<= 11 live labels).
  std::uint64_t edge_mask() const {
    const LabelList ls = labels();
    require(pair_count(ls.size()) <= 64, Errc::range, "edge_mask needs at most 11 live labels");
    std::uint64_t mask = 0;
    for (std::size_t j = 1; j < ls.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (bit(ls[i], ls[j])) mask |= 1ULL << pair_index(i, j);
    return mask;
  }

  // In-place operations. The free functions below are the value-semantics API.

  void complement_at(Label v) {
    check_live(v);
    const std::vector<std::uint64_t> nb(rows_.begin() + v * wpr_, rows_.begin() + (v + 1) * wpr_);
    for (Label u : bits_to_labels(nb)) {
      std::uint64_t* r = rows_.data() + u * wpr_;
      for (std::size_t w = 0; w < wpr_; ++w) r[w] ^= nb[w];
      r[u / 64] ^= 1ULL << (u % 64);  // undo the diagonal toggle
    }
  }

  /// Toggle every pair inside S.
  void toggle_clique_words(std::span<const std::uint64_t> s) {
    for (Label x : bits_to_labels(s)) {
      std::uint64_t* r = rows_.data() + x * wpr_;
      for (std::size_t w = 0; w < wpr_; ++w) r[w] ^= s[w];
      r[x / 64] ^= 1ULL << (x % 64);
    }
  }

  /// Toggle every pair lying in two different parts of {S\T, T\S, S&T}.
  void toggle_tripartite_words(std::span<const std::uint64_t> s, std::span<const std::uint64_t> t) {
    std::vector<std::uint64_t> a(wpr_), b(wpr_), c(wpr_);
    for (std::size_t w = 0; w < wpr_; ++w) {
      a[w] = s[w] & ~t[w];
      b[w] = t[w] & ~s[w];
      c[w] = s[w] & t[w];
    }
    xor_block(a, b, c);
    xor_block(b, a, c);
    xor_block(c, a, b);
  }

  /// Toggle every pair {x, y} with x in S, y in T (S, T disjoint).
  void toggle_biclique_words(std::span<const std::uint64_t> s, std::span<const std::uint64_t> t) {
    const std::vector<std::uint64_t> none(wpr_, 0);
    xor_block(s, t, none);
    xor_block(t, s, none);
  }

  /// Pivot on edge uv: symmetric difference with the complete tripartite
  /// graph on N(u)&N(v), N(u)\(N(v)+v), N(v)\(N(u)+u), then swap u and v.
  void pivot_at(Label u, Label v) {
    require(has_edge(u, v), Errc::no_edge, "pivot needs an edge");
    std::vector<std::uint64_t> a(wpr_), b(wpr_), c(wpr_);
    const std::uint64_t* nu = rows_.data() + u * wpr_;
    const std::uint64_t* nv = rows_.data() + v * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) {
      a[w] = nu[w] & nv[w];
      b[w] = nu[w] & ~nv[w];
      c[w] = nv[w] & ~nu[w];
    }
    b[v / 64] &= ~(1ULL << (v % 64));
    c[u / 64] &= ~(1ULL << (u % 64));
    xor_block(a, b, c);
    xor_block(b, a, c);
    xor_block(c, a, b);
    swap_labels(u, v);
  }

  /// Exchange the roles of labels u and v (both live).
  void swap_labels(Label u, Label v) {
    if (u == v) return;
    std::swap_ranges(rows_.begin() + u * wpr_, rows_.begin() + (u + 1) * wpr_, rows_.begin() + v * wpr_);
    const std::size_t wu = u / 64, wv = v / 64;
    const std::uint64_t bu = 1ULL << (u % 64), bv = 1ULL << (v % 64);
    for (std::size_t x = 0; x < n_; ++x) {
      std::uint64_t* r = rows_.data() + x * wpr_;
      const bool hu = r[wu] & bu;
      const bool hv = r[wv] & bv;
      if (hu != hv) {
        r[wu] ^= bu;
        r[wv] ^= bv;
      }
    }
  }

  void remove_vertex(Label v) {
    check_live(v);
    for (Label u : neighbours(v)) rows_[u * wpr_ + v / 64] &= ~(1ULL << (v % 64));
    std::fill(rows_.begin() + v * wpr_, rows_.begin() + (v + 1) * wpr_, 0);
    live_[v / 64] &= ~(1ULL << (v % 64));
  }

  /// Same live labels and the same edges (capacities may differ).
  friend bool operator==(const Graph& a, const Graph& b) {
    const LabelList la = a.labels();
    if (la != b.labels()) return false;
    for (Label u : la)
      for (Label v : la)
        if (u < v && a.bit(u, v) != b.bit(u, v)) return false;
    return true;
  }

  static LabelList bits_to_labels(std::span<const std::uint64_t> words) {
    LabelList out;
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t x = words[w];
      while (x) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  std::vector<std::uint64_t> labels_to_words(std::span<const Label> ls) const {
    std::vector<std::uint64_t> out(wpr_, 0);
    for (Label v : ls) {
      check_live(v);
      out[v / 64] |= 1ULL << (v % 64);
    }
    return out;
  }

  void check_live(Label v) const {
    if (!live(v)) fail(Errc::vertex, "label " + std::to_string(v) + " is not live");
  }

 private:
  bool bit(Label u, Label v) const noexcept { return (rows_[u * wpr_ + v / 64] >> (v % 64)) & 1U; }

  void set_edge_unchecked(Label u, Label v, bool present) {
    const std::uint64_t bu = 1ULL << (u % 64), bv = 1ULL << (v % 64);
    if (present) {
      rows_[u * wpr_ + v / 64] |= bv;
      rows_[v * wpr_ + u / 64] |= bu;
    } else {
      rows_[u * wpr_ + v / 64] &= ~bv;
      rows_[v * wpr_ + u / 64] &= ~bu;
    }
  }

  // For each x in `from`: row[x] ^= (p | q).
  void xor_block(std::span<const std::uint64_t> from, std::span<const std::uint64_t> p,
                 std::span<const std::uint64_t> q) {
    for (Label x : bits_to_labels(from)) {
      std::uint64_t* r = rows_.data() + x * wpr_;
      for (std::size_t w = 0; w < wpr_; ++w) r[w] ^= p[w] | q[w];
    }
  }

  std::size_t n_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> live_;
};

// ---------------------------------------------------------------------------
// Value-semantics operations

/// G * v: complement the subgraph induced on N(v).
inline Graph local_complement(Graph g, Label v) {
  g.complement_at(v);
  return g;
}

/// G x uv = G * u * v * u for an edge uv.
inline Graph pivot(Graph g, Label u, Label v) {
  g.check_live(u);
  g.check_live(v);
  if (!g.has_edge(u, v)) fail(Errc::no_edge, "pivot on non-edge " + std::to_string(u) + "," + std::to_string(v));
  g.pivot_at(u, v);
  return g;
}

/// Pivot if uv is an edge, identity otherwise.
inline Graph attempted_pivot(Graph g, Label u, Label v) {
  g.check_live(u);
  g.check_live(v);
  if (u != v && g.has_edge(u, v)) g.pivot_at(u, v);
  return g;
}

struct Clique {
  LabelList s;
};
struct Tripartite {
  LabelList s, t;
};
struct Biclique {
  LabelList s, t;
};
using Template = std::variant<Clique, Tripartite, Biclique>;

/// Symmetric difference of E(G) with the template's edge set.
inline Graph toggle_template(Graph g, const Template& tpl) {
  std::visit(
      [&g](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Clique>) {
          g.toggle_clique_words(g.labels_to_words(t.s));
        } else if constexpr (std::is_same_v<T, Tripartite>) {
          g.toggle_tripartite_words(g.labels_to_words(t.s), g.labels_to_words(t.t));
        } else {
          const auto s = g.labels_to_words(t.s);
          const auto tt = g.labels_to_words(t.t);
          for (std::size_t w = 0; w < s.size(); ++w)
            require((s[w] & tt[w]) == 0, Errc::precondition, "biclique sides must be disjoint");
          g.toggle_biclique_words(s, tt);
        }
      },
      tpl);
  return g;
}

/// G[U]: keeps exactly the labels in U.
inline Graph induced_subgraph(Graph g, std::span<const Label> keep) {
  const auto keep_words = g.labels_to_words(keep);
  for (Label v : g.labels())
    if (!((keep_words[v / 64] >> (v % 64)) & 1U)) g.remove_vertex(v);
  return g;
}

/// G - U.
inline Graph delete_vertices(Graph g, std::span<const Label> drop) {
  for (Label v : drop) g.remove_vertex(v);
  return g;
}

/// G * v_{i1} * ... * v_{i|J|} with J applied in increasing index order.
/// No vertex is deleted here.
inline Graph build_GJ(Graph g, std::span<const Label> base, std::span<const std::size_t> indices) {
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), Errc::precondition,
          "J must not repeat indices");
  for (std::size_t i : sorted) {
    require(i < base.size(), Errc::range, "index of J outside the base list");
    g.complement_at(base[i]);
  }
  return g;
}

/// Bitmask form of J (bit i = index i) for |base| <= 64.
inline Graph build_GJ(const Graph& g, std::span<const Label> base, std::uint64_t j_mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < 64; ++i)
    if ((j_mask >> i) & 1U) idx.push_back(i);
  return build_GJ(g, base, idx);
}

/// G(n, 1/2): pairs visited in colex order, one generator bit per pair.
inline Graph sample_uniform_graph(std::size_t n, std::uint64_t seed) {
  Graph g(n);
  CounterRng rng(seed);
  BitStream bits(rng);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (bits.next()) g.add_edge(i, j);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) g.add_edge(i, j);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// Wheel on n vertices: hub 0 joined to the cycle 1..n-1 (n >= 4).
inline Graph wheel_graph(std::size_t n) {
  require(n >= 4, Errc::range, "wheel needs at least 4 vertices");
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, i + 1 < n ? i + 1 : 1);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Packed fast path: at most 64 labels, one word per row, no heap storage.

class PackedGraph {
 public:
  static constexpr std::size_t kMax = 64;

  PackedGraph() { rows_.fill(0); }

  explicit PackedGraph(const Graph& g) : PackedGraph() {
    require(g.capacity() <= kMax, Errc::range, "packed graphs hold at most 64 labels");
    n_ = static_cast<std::uint8_t>(g.capacity());
    for (Label v : g.labels()) {
      live_ |= 1ULL << v;
      rows_[v] = g.row(v)[0];
    }
  }

  Graph to_graph() const {
    LabelList ls;
    for (std::uint64_t x = live_; x; x &= x - 1) ls.push_back(static_cast<Label>(std::countr_zero(x)));
    Graph g = Graph::on_labels(n_, ls);
    for (Label u : ls)
      for (std::uint64_t x = rows_[u] & ~((2ULL << u) - 1); x; x &= x - 1)
        g.add_edge(u, static_cast<Label>(std::countr_zero(x)));
    return g;
  }

  std::size_t capacity() const noexcept { return n_; }
  std::uint64_t live() const noexcept { return live_; }
  std::uint64_t row(Label v) const noexcept { return rows_[v]; }
  bool has_edge(Label u, Label v) const noexcept { return (rows_[u] >> v) & 1U; }

  void complement_at(Label v) noexcept {
    const std::uint64_t nb = rows_[v];
    for (std::uint64_t x = nb; x; x &= x - 1) {
      const int u = std::countr_zero(x);
      rows_[u] ^= nb & ~(1ULL << u);
    }
  }

  void pivot_at(Label u, Label v) noexcept {
    const std::uint64_t nu = rows_[u], nv = rows_[v];
    const std::uint64_t a = nu & nv;
    const std::uint64_t b = nu & ~nv & ~(1ULL << v);
    const std::uint64_t c = nv & ~nu & ~(1ULL << u);
    for (std::uint64_t x = a; x; x &= x - 1) rows_[std::countr_zero(x)] ^= b | c;
    for (std::uint64_t x = b; x; x &= x - 1) rows_[std::countr_zero(x)] ^= a | c;
    for (std::uint64_t x = c; x; x &= x - 1) rows_[std::countr_zero(x)] ^= a | b;
    swap_labels(u, v);
  }

  void swap_labels(Label u, Label v) noexcept {
    std::swap(rows_[u], rows_[v]);
    const std::uint64_t both = (1ULL << u) | (1ULL << v);
    for (std::uint64_t x = live_; x; x &= x - 1) {
      std::uint64_t& r = rows_[std::countr_zero(x)];
      const std::uint64_t hu = (r >> u) & 1U, hv = (r >> v) & 1U;
      if (hu != hv) r ^= both;
    }
  }

  void remove_vertex(Label v) noexcept {
    for (std::uint64_t x = rows_[v]; x; x &= x - 1) rows_[std::countr_zero(x)] &= ~(1ULL << v);
    rows_[v] = 0;
    live_ &= ~(1ULL << v);
  }

  friend bool operator==(const PackedGraph& a, const PackedGraph& b) noexcept {
    if (a.live_ != b.live_) return false;
    for (std::uint64_t x = a.live_; x; x &= x - 1) {
      const int v = std::countr_zero(x);
      if (a.rows_[v] != b.rows_[v]) return false;
    }
    return true;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = live_ * 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t x = live_; x; x &= x - 1) h = CounterRng::mix(h ^ rows_[std::countr_zero(x)]);
    return static_cast<std::size_t>(h);
  }

  /// Colex edge mask of the subgraph induced on the labels in `order`
  /// (position i of `order` plays vertex i).
  std::uint64_t induced_mask(std::span<const Label> order) const noexcept {
    std::uint64_t mask = 0;
    std::size_t idx = 0;
    for (std::size_t j = 1; j < order.size(); ++j)
      for (std::size_t i = 0; i < j; ++i, ++idx)
        if (has_edge(order[i], order[j])) mask |= 1ULL << idx;
    return mask;
  }

 private:
  std::array<std::uint64_t, kMax> rows_;
  std::uint64_t live_ = 0;
  std::uint8_t n_ = 0;
};

struct PackedGraphHash {
  std::size_t operator()(const PackedGraph& g) const noexcept { return g.hash(); }
};

}  // namespace vmlab

#endif  // VMLAB_GRAPH_HPP
