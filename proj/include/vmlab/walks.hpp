#ifndef VMLAB_WALKS_HPP
#define VMLAB_WALKS_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "pairs.hpp"

namespace vmlab {

inline constexpr std::size_t kWalkMaxK = 6;
inline constexpr std::size_t kWalkMaxCells = 20;

enum class WalkKind { com, piv, bpiv };

constexpr std::string_view to_string(WalkKind w) noexcept {
  switch (w) {
    case WalkKind::com: return "com";
    case WalkKind::piv: return "piv";
    case WalkKind::bpiv: return "bpiv";
  }
  return "?";
}

inline WalkKind parse_walk_kind(std::string_view s) {
  if (s == "com") return WalkKind::com;
  if (s == "piv") return WalkKind::piv;
  if (s == "bpiv") return WalkKind::bpiv;
  fail(Errc::parse, "unknown walk step '" + std::string(s) + "'");
}

/// Shape of the state space: labeled graphs on [k] (colex pair cells) or
/// ordered bipartite graphs with parts of sizes ell, r (cells r*ell + l).
struct WalkShape {
  bool bipartite = false;
  std::size_t k = 0;
  std::size_t ell = 0;
  std::size_t r = 0;

  static WalkShape plain(std::size_t k) {
    require(k <= kWalkMaxK, Errc::budget, "plain walks need k <= 6");
    return {false, k, 0, 0};
  }
  static WalkShape bip(std::size_t ell, std::size_t r) {
    require(ell * r <= kWalkMaxCells, Errc::budget, "bipartite walks need ell*r <= 20");
    return {true, 0, ell, r};
  }

  std::size_t cells() const { return bipartite ? ell * r : pair_count(k); }
  std::size_t states() const { return std::size_t{1} << cells(); }
  friend bool operator==(const WalkShape&, const WalkShape&) = default;
};

/// A signed dyadic vector indexed by cell masks: entry H is nums[H] / 2^exponent.
/// Probability distributions are the special case with nonnegative entries
/// summing to one. The exponent is never reduced, so it grows by exactly the
/// step's subset bits on every walk step.
class GraphDistribution {
 public:
  GraphDistribution(WalkShape shape, std::size_t exponent, std::vector<BigInt> nums)
      : shape_(shape), exponent_(exponent), nums_(std::move(nums)) {
    require(nums_.size() == shape_.states(), Errc::shape, "numerator count must be 2^cells");
  }

  static GraphDistribution point_mass(WalkShape shape, std::uint64_t mask = 0) {
    require(mask < shape.states(), Errc::range, "mask outside the state space");
    std::vector<BigInt> v(shape.states(), 0);
    v[mask] = 1;
    return {shape, 0, std::move(v)};
  }

  static GraphDistribution uniform(WalkShape shape) {
    return {shape, shape.cells(), std::vector<BigInt>(shape.states(), 1)};
  }

  /// chi_G(H) = (-1)^{|E(G) & E(H)|} as a signed vector (not a distribution).
  static GraphDistribution character(WalkShape shape, std::uint64_t g) {
    require(g < shape.states(), Errc::range, "mask outside the state space");
    std::vector<BigInt> v(shape.states());
    for (std::uint64_t h = 0; h < v.size(); ++h) v[h] = (std::popcount(g & h) & 1) ? -1 : 1;
    return {shape, 0, std::move(v)};
  }

  const WalkShape& shape() const { return shape_; }
  std::size_t exponent() const { return exponent_; }
  const std::vector<BigInt>& numerators() const { return nums_; }
  std::size_t size() const { return nums_.size(); }

  Dyadic at(std::uint64_t h) const {
    require(h < nums_.size(), Errc::range, "mask outside the state space");
    return {nums_[h], exponent_};
  }

  Dyadic total() const {
    BigInt s = 0;
    for (const auto& x : nums_) s += x;
    return {s, exponent_};
  }

  bool is_probability() const {
    for (const auto& x : nums_)
      if (x < 0) return false;
    return total() == Dyadic::integer(1);
  }

  /// Entrywise equality of values.
  friend bool operator==(const GraphDistribution& a, const GraphDistribution& b) {
    if (!(a.shape_ == b.shape_)) return false;
    const std::size_t e = std::max(a.exponent_, b.exponent_);
    for (std::size_t i = 0; i < a.nums_.size(); ++i)
      if ((a.nums_[i] << (e - a.exponent_)) != (b.nums_[i] << (e - b.exponent_))) return false;
    return true;
  }

  /// <a, b> = sum_H a(H) b(H)
  friend Dyadic inner(const GraphDistribution& a, const GraphDistribution& b) {
    require(a.shape_ == b.shape_, Errc::shape, "inner product of different shapes");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.nums_.size(); ++i) s += a.nums_[i] * b.nums_[i];
    return {s, a.exponent_ + b.exponent_};
  }

  GraphDistribution scaled(const Dyadic& c) const {
    std::vector<BigInt> v(nums_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = nums_[i] * c.numerator();
    return {shape_, exponent_ + c.exponent(), std::move(v)};
  }

 private:
  WalkShape shape_;
  std::size_t exponent_;
  std::vector<BigInt> nums_;
};

// ---------------------------------------------------------------------------
// Templates and kernels

inline std::uint64_t clique_cells(std::size_t k, std::uint64_t s) {
  std::uint64_t m = 0;
  for (std::size_t j = 1; j < k; ++j)
    if ((s >> j) & 1U)
      for (std::size_t i = 0; i < j; ++i)
        if ((s >> i) & 1U) m |= 1ULL << pair_index(i, j);
  return m;
}

/// Complete tripartite graph on parts S\T, T\S, S&T.
inline std::uint64_t tripartite_cells(std::size_t k, std::uint64_t s, std::uint64_t t) {
  auto part = [&](std::size_t x) { return static_cast<unsigned>(((s >> x) & 1U) | (((t >> x) & 1U) << 1)); };
  std::uint64_t m = 0;
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const unsigned a = part(i), b = part(j);
      if (a && b && a != b) m |= 1ULL << pair_index(i, j);
    }
  return m;
}

/// Biclique S x T with S a subset of the ell left cells, T of the r right cells.
inline std::uint64_t biclique_cells(std::size_t ell, std::size_t r, std::uint64_t s, std::uint64_t t) {
  std::uint64_t m = 0;
  for (std::size_t rr = 0; rr < r; ++rr)
    if ((t >> rr) & 1U)
      for (std::size_t l = 0; l < ell; ++l)
        if ((s >> l) & 1U) m |= 1ULL << cell_index(l, rr, ell);
  return m;
}

/// One walk step as a multiset of toggle masks over 2^bits equally likely choices.
struct WalkKernel {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;  // (toggle mask, multiplicity)
  std::size_t bits = 0;
};

inline WalkKernel walk_kernel(const WalkShape& shape, WalkKind kind) {
  std::map<std::uint64_t, std::uint64_t> count;
  WalkKernel out;
  switch (kind) {
    case WalkKind::com:
      require(!shape.bipartite, Errc::precondition, "com needs a plain shape");
      out.bits = shape.k;
      for (std::uint64_t s = 0; s < (1ULL << shape.k); ++s) ++count[clique_cells(shape.k, s)];
      break;
    case WalkKind::piv:
      require(!shape.bipartite, Errc::precondition, "piv needs a plain shape");
      out.bits = 2 * shape.k;
      for (std::uint64_t s = 0; s < (1ULL << shape.k); ++s)
        for (std::uint64_t t = 0; t < (1ULL << shape.k); ++t) ++count[tripartite_cells(shape.k, s, t)];
      break;
    case WalkKind::bpiv:
      require(shape.bipartite, Errc::precondition, "bpiv needs a bipartite shape");
      out.bits = shape.ell + shape.r;
      for (std::uint64_t s = 0; s < (1ULL << shape.ell); ++s)
        for (std::uint64_t t = 0; t < (1ULL << shape.r); ++t) ++count[biclique_cells(shape.ell, shape.r, s, t)];
      break;
  }
  out.terms.assign(count.begin(), count.end());
  return out;
}

namespace detail {

__extension__ typedef __int128 Int128;

inline std::size_t max_bits(const std::vector<BigInt>& v) {
  std::size_t b = 0;
  for (const auto& x : v)
    if (x != 0) b = std::max<std::size_t>(b, boost::multiprecision::msb(abs(x)) + 1);
  return b;
}

}  // namespace detail

/// Exact convolution: out(H) = 2^-bits * sum_{choices} mu(H xor toggle).
inline GraphDistribution apply_walk_step(const GraphDistribution& mu, const WalkKernel& ker) {
  const auto& in = mu.numerators();
  const std::size_t n = in.size();
  std::vector<BigInt> out(n);
  if (detail::max_bits(in) + ker.bits < 126) {
    std::vector<detail::Int128> a(n), b(n, 0);
    for (std::size_t i = 0; i < n; ++i) a[i] = in[i].convert_to<detail::Int128>();
    for (auto [m, c] : ker.terms)
      for (std::size_t h = 0; h < n; ++h) b[h] += static_cast<detail::Int128>(c) * a[h ^ m];
    for (std::size_t i = 0; i < n; ++i) out[i] = BigInt(b[i]);
  } else {
    for (std::size_t h = 0; h < n; ++h) out[h] = 0;
    for (auto [m, c] : ker.terms)
      for (std::size_t h = 0; h < n; ++h) out[h] += in[h ^ m] * c;
  }
  return {mu.shape(), mu.exponent() + ker.bits, std::move(out)};
}

inline GraphDistribution apply_walk_step(const GraphDistribution& mu, WalkKind kind) {
  return apply_walk_step(mu, walk_kernel(mu.shape(), kind));
}

inline GraphDistribution apply_walk(GraphDistribution mu, std::span<const WalkKind> steps) {
  for (WalkKind w : steps) mu = apply_walk_step(mu, w);
  return mu;
}

/// Eigenvalue of chi_g under the operator: E[(-1)^{|E(g) & toggle|}] by direct
/// expectation over the subset choices.
inline Dyadic character_eigenvalue(const WalkShape& shape, std::uint64_t g, WalkKind kind) {
  require(g < shape.states(), Errc::range, "mask outside the state space");
  const WalkKernel ker = walk_kernel(shape, kind);
  BigInt s = 0;
  for (auto [m, c] : ker.terms) {
    if (std::popcount(g & m) & 1)
      s -= c;
    else
      s += c;
  }
  return {s, ker.bits};
}

/// Graph overload: live labels are mapped to [k] in ascending order.
inline Dyadic character_eigenvalue(const Graph& g, WalkKind kind) {
  return character_eigenvalue(WalkShape::plain(g.order()), g.edge_mask(), kind);
}

inline Dyadic character_eigenvalue(const OrderedBipartiteGraph& g) {
  return character_eigenvalue(WalkShape::bip(g.left().size(), g.right().size()), g.cell_mask(), WalkKind::bpiv);
}

/// max_H |mu(H) - 2^-cells|, exact.
inline Dyadic linf_distance_to_uniform(const GraphDistribution& mu) {
  const std::size_t e = mu.exponent(), c = mu.shape().cells();
  const std::size_t out_exp = std::max(e, c);
  const BigInt unif = BigInt(1) << (out_exp - c);
  BigInt best = 0;
  for (const auto& x : mu.numerators()) {
    BigInt d = (x << (out_exp - e)) - unif;
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return {best, out_exp};
}

/// 2^{2k - C(k,2) - m}, m = m1 + 2*m2; meaningful for m > 2k.
inline Dyadic com_piv_mixing_bound(std::size_t k, std::size_t m1, std::size_t m2) {
  const std::size_t m = m1 + 2 * m2;
  require(m > 2 * k, Errc::range, "mixing bound needs m1 + 2*m2 > 2k");
  return Dyadic::pow2_neg(pair_count(k) + m - 2 * k);
}

inline Dyadic com_piv_mixing_bound(std::size_t k, std::span<const WalkKind> steps) {
  std::size_t m1 = 0, m2 = 0;
  for (WalkKind w : steps) {
    require(w != WalkKind::bpiv, Errc::precondition, "bpiv step in a plain walk");
    (w == WalkKind::com ? m1 : m2) += 1;
  }
  return com_piv_mixing_bound(k, m1, m2);
}

/// 2^-t after t bPiv steps.
inline Dyadic bpiv_mixing_bound(std::size_t t) { return Dyadic::pow2_neg(t); }

}  // namespace vmlab

#endif  // VMLAB_WALKS_HPP
