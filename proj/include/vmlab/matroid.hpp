#ifndef VMLAB_MATROID_HPP
#define VMLAB_MATROID_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bipartite.hpp"
#include "error.hpp"
#include "f2.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace vmlab {

inline constexpr std::size_t kMatroidMaxGround = 64;
inline constexpr std::size_t kBasisCountMaxGround = 24;
inline constexpr std::size_t kSampleRetryCap = 10'000;

using Rational = boost::multiprecision::cpp_rational;

/// Binary matroid on a set of labels, represented by a full-row-rank r x n
/// matrix over F2. Ground labels are kept in ascending order; row i is a
/// bitmask whose bit j is the entry in the column of ground()[j].
class BinaryMatroid {
 public:
  BinaryMatroid() = default;

  BinaryMatroid(LabelList ground, std::vector<std::uint64_t> rows) {
    require(ground.size() <= kMatroidMaxGround, Errc::range, "binary matroids are limited to 64 elements");
    std::vector<std::size_t> order(ground.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ground[a] < ground[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
      require(ground[order[i - 1]] != ground[order[i]], Errc::labels, "ground labels must be distinct");
    ground_.resize(ground.size());
    for (std::size_t j = 0; j < order.size(); ++j) ground_[j] = ground[order[j]];
    rows_.reserve(rows.size());
    const std::uint64_t full = ground.size() == 64 ? ~0ULL : (1ULL << ground.size()) - 1;
    for (std::uint64_t row : rows) {
      require((row & ~full) == 0, Errc::shape, "row has bits beyond the ground set");
      std::uint64_t out = 0;
      for (std::size_t j = 0; j < order.size(); ++j)
        if ((row >> order[j]) & 1U) out |= 1ULL << j;
      rows_.push_back(out);
    }
    require(f2::rank_of_words(rows_) == rows_.size(), Errc::shape, "representation must have full row rank");
  }

  /// Matroid with the given row space; rows need not be independent.
  static BinaryMatroid from_spanning_rows(LabelList ground, std::vector<std::uint64_t> rows) {
    return BinaryMatroid(std::move(ground), reduce_rows(std::move(rows)));
  }

  static BinaryMatroid free_matroid(const LabelList& ground) {
    std::vector<std::uint64_t> rows;
    for (std::size_t j = 0; j < ground.size(); ++j) rows.push_back(1ULL << j);
    LabelList sorted = ground;
    std::sort(sorted.begin(), sorted.end());
    return BinaryMatroid(sorted, rows);
  }

  const LabelList& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  std::size_t position(Label e) const {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), e);
    require(it != ground_.end() && *it == e, Errc::vertex, "element not in the ground set");
    return static_cast<std::size_t>(it - ground_.begin());
  }

  bool contains(Label e) const { return std::binary_search(ground_.begin(), ground_.end(), e); }

  /// Column of position j as a bitmask over rows.
  std::uint64_t column(std::size_t j) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if ((rows_[i] >> j) & 1U) c |= 1ULL << i;
    return c;
  }

  std::vector<std::uint64_t> columns() const {
    std::vector<std::uint64_t> out(ground_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = column(j);
    return out;
  }

  /// Rank of a set of positions (bitmask over ground positions).
  std::size_t rank_of_positions(std::uint64_t positions) const {
    std::vector<std::uint64_t> cols;
    for (std::uint64_t m = positions; m; m &= m - 1) cols.push_back(column(static_cast<std::size_t>(std::countr_zero(m))));
    return f2::rank_of_words(std::move(cols));
  }

  std::uint64_t positions_of(std::span<const Label> set) const {
    std::uint64_t m = 0;
    for (Label e : set) m |= 1ULL << position(e);
    return m;
  }

  std::size_t rank_of(std::span<const Label> set) const { return rank_of_positions(positions_of(set)); }
  bool is_independent(std::span<const Label> set) const { return rank_of(set) == set.size(); }
  bool is_basis(std::span<const Label> set) const { return set.size() == rank() && is_independent(set); }

  bool is_loop(Label e) const { return column(position(e)) == 0; }

  /// Reduced row echelon form of the row space; a canonical key for the
  /// labeled matroid together with the ground set.
  std::vector<std::uint64_t> rref() const { return reduce_rows(rows_); }

  friend bool operator==(const BinaryMatroid& a, const BinaryMatroid& b) {
    return a.ground_ == b.ground_ && a.rref() == b.rref();
  }

  /// Same value with the rows replaced by the RREF.
  BinaryMatroid normalized() const {
    BinaryMatroid m = *this;
    m.rows_ = rref();
    return m;
  }

 private:
  // Gauss-Jordan with pivots on the lowest set column; zero rows dropped and
  // rows sorted by pivot, which makes the result unique for the row space.
  static std::vector<std::uint64_t> reduce_rows(std::vector<std::uint64_t> rows) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r : rows) {
      for (std::uint64_t b : out)
        if ((r >> std::countr_zero(b)) & 1U) r ^= b;
      if (r == 0) continue;
      const int p = std::countr_zero(r);
      for (std::uint64_t& b : out)
        if ((b >> p) & 1U) b ^= r;
      out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) { return std::countr_zero(a) < std::countr_zero(b); });
    return out;
  }

  LabelList ground_;
  std::vector<std::uint64_t> rows_;
};

/// Equality through the independence oracle: same ground set and the same
/// independent sets (checked over all subsets of size <= max rank).
inline bool same_matroid_by_oracle(const BinaryMatroid& a, const BinaryMatroid& b) {
  if (a.ground() != b.ground() || a.rank() != b.rank()) return false;
  const std::size_t n = a.size();
  require(n <= 20, Errc::budget, "oracle comparison enumerates all subsets; n <= 20");
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) > a.rank()) continue;
    if (a.rank_of_positions(s) != b.rank_of_positions(s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fundamental graphs

/// M(L, R, E): ground L u R represented by [I_R A], A the R x L biadjacency.
inline BinaryMatroid matroid_from_fundamental(const OrderedBipartiteGraph& b) {
  LabelList ground = b.labels();
  const LabelList rs = b.right();
  std::vector<std::uint64_t> rows;
  for (Label r : rs) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < ground.size(); ++j) {
      const Label e = ground[j];
      if (e == r || (b.in_left(e) && b.has_edge(e, r))) row |= 1ULL << j;
    }
    rows.push_back(row);
  }
  return BinaryMatroid(std::move(ground), std::move(rows));
}

/// Fundamental graph of M with respect to a basis: L = ground \ basis,
/// R = basis, l ~ r iff r lies in the fundamental circuit of l.
inline OrderedBipartiteGraph fundamental_graph(const BinaryMatroid& m, std::span<const Label> basis_in) {
  LabelList basis(basis_in.begin(), basis_in.end());
  std::sort(basis.begin(), basis.end());
  for (Label e : basis) require(m.contains(e), Errc::not_basis, "basis element outside the ground set");
  require(std::adjacent_find(basis.begin(), basis.end()) == basis.end(), Errc::not_basis, "basis repeats an element");
  if (!m.is_basis(basis)) fail(Errc::not_basis, "set is not a basis");
  // Row-reduce so that basis column i is the unit vector e_i.
  std::vector<std::uint64_t> rows = m.rows();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t p = m.position(basis[i]);
    std::size_t piv = i;
    while (!((rows[piv] >> p) & 1U)) ++piv;
    std::swap(rows[i], rows[piv]);
    for (std::size_t t = 0; t < rows.size(); ++t)
      if (t != i && ((rows[t] >> p) & 1U)) rows[t] ^= rows[i];
  }
  LabelList left;
  for (Label e : m.ground())
    if (!std::binary_search(basis.begin(), basis.end(), e)) left.push_back(e);
  std::size_t cap = 0;
  for (Label e : m.ground()) cap = std::max(cap, e + 1);
  OrderedBipartiteGraph g(cap, left, basis);
  for (Label l : left) {
    const std::size_t p = m.position(l);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if ((rows[i] >> p) & 1U) g.add_edge(l, basis[i]);
  }
  return g;
}

/// Lexicographically smallest basis (greedy over ascending labels).
inline LabelList greedy_basis(const BinaryMatroid& m) {
  LabelList basis;
  std::uint64_t chosen = 0;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (m.rank_of_positions(chosen | (1ULL << j)) > basis.size()) {
      chosen |= 1ULL << j;
      basis.push_back(m.ground()[j]);
    }
  return basis;
}

inline OrderedBipartiteGraph swap_parts(const OrderedBipartiteGraph& b) {
  const LabelList ls = b.left(), rs = b.right();
  OrderedBipartiteGraph out(b.capacity(), rs, ls);
  for (auto [l, r] : b.edges()) out.add_edge(r, l);
  return out;
}

/// M*: swap the parts of any fundamental graph.
inline BinaryMatroid dual(const BinaryMatroid& m) {
  return matroid_from_fundamental(swap_parts(fundamental_graph(m, greedy_basis(m))));
}

// ---------------------------------------------------------------------------
// Minors

enum class MinorKind { remove, contract };

namespace detail {

inline BinaryMatroid drop_position(const BinaryMatroid& m, std::size_t p, std::vector<std::uint64_t> rows) {
  LabelList ground;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (j != p) ground.push_back(m.ground()[j]);
  const std::uint64_t low = (1ULL << p) - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t r : rows) out.push_back((r & low) | ((r >> (p + 1)) << p));
  return BinaryMatroid::from_spanning_rows(std::move(ground), std::move(out));
}

}  // namespace detail

/// M \ e or M / e. Contracting a loop is the same as deleting it.
inline BinaryMatroid matroid_minor_op(const BinaryMatroid& m, Label e, MinorKind kind) {
  const std::size_t p = m.position(e);
  std::vector<std::uint64_t> rows = m.rows();
  if (kind == MinorKind::contract) {
    auto it = std::find_if(rows.begin(), rows.end(), [p](std::uint64_t r) { return (r >> p) & 1U; });
    if (it != rows.end()) {
      const std::uint64_t piv = *it;
      rows.erase(it);
      for (std::uint64_t& r : rows)
        if ((r >> p) & 1U) r ^= piv;
    }
  }
  return detail::drop_position(m, p, std::move(rows));
}

inline BinaryMatroid delete_element(const BinaryMatroid& m, Label e) { return matroid_minor_op(m, e, MinorKind::remove); }
inline BinaryMatroid contract_element(const BinaryMatroid& m, Label e) {
  return matroid_minor_op(m, e, MinorKind::contract);
}

struct MatroidMinorWitness {
  LabelList deleted;
  LabelList contracted;
};

/// Some deletion/contraction of ground(M) \ ground(N) giving exactly N, if any.
inline std::optional<MatroidMinorWitness> find_minor(const BinaryMatroid& m, const BinaryMatroid& n) {
  for (Label e : n.ground()) require(m.contains(e), Errc::labels, "ground(N) must be a subset of ground(M)");
  LabelList extra;
  for (Label e : m.ground())
    if (!n.contains(e)) extra.push_back(e);
  const auto target = n.rref();
  std::set<std::pair<std::size_t, std::vector<std::uint64_t>>> dead;
  MatroidMinorWitness w;
  auto rec = [&](auto&& self, const BinaryMatroid& cur, std::size_t i) -> bool {
    const std::size_t left = extra.size() - i;
    if (cur.rank() < n.rank() || cur.rank() > n.rank() + left) return false;
    if (i == extra.size()) return cur.rref() == target;
    auto key = std::make_pair(i, cur.rref());
    if (dead.contains(key)) return false;
    w.deleted.push_back(extra[i]);
    if (self(self, delete_element(cur, extra[i]), i + 1)) return true;
    w.deleted.pop_back();
    w.contracted.push_back(extra[i]);
    if (self(self, contract_element(cur, extra[i]), i + 1)) return true;
    w.contracted.pop_back();
    dead.insert(std::move(key));
    return false;
  };
  if (rec(rec, m, 0)) return w;
  return std::nullopt;
}

inline bool is_minor(const BinaryMatroid& m, const BinaryMatroid& n) { return find_minor(m, n).has_value(); }

// ---------------------------------------------------------------------------
// Counting, enumeration and sampling

inline BigCount count_bases(const BinaryMatroid& m) {
  require(m.size() <= kBasisCountMaxGround, Errc::budget, "basis counting enumerates r-subsets; n <= 24");
  const std::size_t n = m.size(), r = m.rank();
  const auto cols = m.columns();
  BigCount count = 0;
  if (r == 0) return 1;
  // Gosper's hack over r-subsets of positions.
  std::uint64_t s = (1ULL << r) - 1;
  const std::uint64_t limit = 1ULL << n;
  while (s < limit) {
    std::vector<std::uint64_t> pick;
    for (std::uint64_t t = s; t; t &= t - 1) pick.push_back(cols[static_cast<std::size_t>(std::countr_zero(t))]);
    if (f2::rank_of_words(std::move(pick)) == r) ++count;
    const std::uint64_t c = s & (~s + 1), nx = s + c;
    s = (((nx ^ s) >> 2) / c) | nx;
  }
  return count;
}

/// Every rank-r binary matroid on ground {0..n-1}, one per RREF.
inline std::vector<BinaryMatroid> all_binary_matroids(std::size_t r, std::size_t n) {
  require(r <= n && n <= 10, Errc::budget, "matroid enumeration needs r <= n <= 10");
  LabelList ground(n);
  for (std::size_t i = 0; i < n; ++i) ground[i] = i;
  std::vector<BinaryMatroid> out;
  for (std::uint64_t piv = 0; piv < (1ULL << n); ++piv) {
    if (static_cast<std::size_t>(std::popcount(piv)) != r) continue;
    std::vector<std::size_t> pivots;
    for (std::size_t j = 0; j < n; ++j)
      if ((piv >> j) & 1U) pivots.push_back(j);
    // free cells: row i, non-pivot column j > pivots[i]
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = pivots[i] + 1; j < n; ++j)
        if (!((piv >> j) & 1U)) cells.emplace_back(i, j);
    for (std::uint64_t fill = 0; fill < (1ULL << cells.size()); ++fill) {
      std::vector<std::uint64_t> rows(r);
      for (std::size_t i = 0; i < r; ++i) rows[i] = 1ULL << pivots[i];
      for (std::size_t c = 0; c < cells.size(); ++c)
        if ((fill >> c) & 1U) rows[cells[c].first] |= 1ULL << cells[c].second;
      out.emplace_back(ground, std::move(rows));
    }
  }
  return out;
}

/// Uniform rank-r matroid on {0..n-1}: rejection-sample r x n matrices until
/// one has full rank.
inline BinaryMatroid sample_uniform_matroid(std::size_t r, std::size_t n, std::uint64_t seed) {
  require(r <= n && n <= kMatroidMaxGround, Errc::range, "need r <= n <= 64");
  LabelList ground(n);
  for (std::size_t i = 0; i < n; ++i) ground[i] = i;
  const std::uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
  CounterRng rng(seed);
  for (std::size_t attempt = 0; attempt < kSampleRetryCap; ++attempt) {
    std::vector<std::uint64_t> rows(r);
    for (auto& x : rows) x = rng() & full;
    if (f2::rank_of_words(rows) == r) return BinaryMatroid(ground, std::move(rows));
  }
  fail(Errc::cap, "full-rank rejection sampling exceeded its retry cap");
}

/// P[rank(M) = r] for M uniform over all binary matroids on n labeled elements.
inline std::map<std::size_t, Rational> rank_distribution_uniform_matroid(std::size_t n) {
  require(n <= 64, Errc::range, "n <= 64");
  std::vector<BigCount> w(n + 1);
  BigCount total = 0;
  for (std::size_t r = 0; r <= n; ++r) total += (w[r] = gaussian_binomial(n, r));
  std::map<std::size_t, Rational> out;
  for (std::size_t r = 0; r <= n; ++r) out[r] = Rational(w[r], total);
  return out;
}

/// Matroid of a uniformly random subspace of F2^n (any dimension), drawn as a
/// uniform reduced row echelon matrix: the pivot set P is chosen with weight
/// 2^(free entries of P), then the free entries are filled with fair bits.
inline BinaryMatroid sample_uniform_subspace_matroid(std::size_t n, std::uint64_t seed) {
  require(n <= 16, Errc::budget, "pivot-set enumeration is limited to n <= 16");
  // Free entries of a pivot row at column p: non-pivot columns to its right.
  auto free_cells = [n](std::uint32_t piv) {
    std::size_t f = 0;
    for (std::uint32_t m = piv; m; m &= m - 1) {
      const std::size_t p = static_cast<std::size_t>(std::countr_zero(m));
      f += (n - 1 - p) - static_cast<std::size_t>(std::popcount(piv >> (p + 1)));
    }
    return f;
  };
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total = 0;
  for (std::uint32_t piv = 0; piv < (1U << n); ++piv) cumulative.push_back(total += 1ULL << free_cells(piv));
  CounterRng rng(seed);
  const std::uint64_t x = rng.below(total);
  const auto piv = static_cast<std::uint32_t>(std::upper_bound(cumulative.begin(), cumulative.end(), x) -
                                              cumulative.begin());
  std::vector<std::uint64_t> rows;
  BitStream bits(rng);
  for (std::uint32_t m = piv; m; m &= m - 1) {
    const std::size_t p = static_cast<std::size_t>(std::countr_zero(m));
    std::uint64_t row = 1ULL << p;
    for (std::size_t c = p + 1; c < n; ++c)
      if (!((piv >> c) & 1U) && bits.next()) row |= 1ULL << c;
    rows.push_back(row);
  }
  LabelList ground(n);
  for (std::size_t i = 0; i < n; ++i) ground[i] = i;
  return BinaryMatroid(ground, std::move(rows));
}

/// Upper bound 4((n+r)/(2n))^r on Var[b(M)]/E[b(M)]^2.
inline double basis_concentration_bound(std::size_t r, std::size_t n) {
  return 4.0 * std::pow((static_cast<double>(n) + static_cast<double>(r)) / (2.0 * static_cast<double>(n)),
                        static_cast<double>(r));
}

// ---------------------------------------------------------------------------
// Partition alignment

/// Moves Y1 (in R) into L and Y2 (in L) into R by pivots against the spare
/// vertices V1s (in L) and V2s (in R), then deletes all of V1s u V2s.
/// Edges are revealed in ascending label order of V1s against the current
/// Y1 target (then V2s against Y2): an edge pivots and advances the target,
/// a non-edge just deletes the spare vertex. Returns nullopt if a phase runs
/// out of spare vertices before every target has moved.
inline std::optional<OrderedBipartiteGraph> align_partition(OrderedBipartiteGraph b, std::span<const Label> v1s_in,
                                                            std::span<const Label> v2s_in,
                                                            std::span<const Label> y1_in,
                                                            std::span<const Label> y2_in) {
  auto sorted = [](std::span<const Label> s) {
    LabelList v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  const LabelList v1s = sorted(v1s_in), v2s = sorted(v2s_in), y1 = sorted(y1_in), y2 = sorted(y2_in);
  require(v1s.size() == v2s.size(), Errc::precondition, "|V1s| must equal |V2s|");
  for (Label v : v1s) require(b.in_left(v), Errc::precondition, "V1s must lie in L");
  for (Label v : y2) require(b.in_left(v), Errc::precondition, "Y2 must lie in L");
  for (Label v : v2s) require(b.in_right(v), Errc::precondition, "V2s must lie in R");
  for (Label v : y1) require(b.in_right(v), Errc::precondition, "Y1 must lie in R");
  LabelList all = v1s;
  for (const LabelList* s : {&v2s, &y1, &y2}) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  require(std::adjacent_find(all.begin(), all.end()) == all.end(), Errc::precondition, "the four sets must be disjoint");

  auto phase = [&b](const LabelList& spares, const LabelList& targets) {
    std::size_t j = 0;
    for (Label v : spares) {
      if (j < targets.size() && b.has_edge(v, targets[j])) {
        b.pivot_at(v, targets[j]);
        ++j;
      }
      b.remove_vertex(v);
    }
    return j == targets.size();
  };
  if (!phase(v1s, y1)) return std::nullopt;
  if (!phase(v2s, y2)) return std::nullopt;
  return b;
}

}  // namespace vmlab

#endif  // VMLAB_MATROID_HPP
