#ifndef VMLAB_F2_HPP
#define VMLAB_F2_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "pairs.hpp"

namespace vmlab {

/// Exact nonnegative counts that may exceed 64 bits.
using BigCount = boost::multiprecision::cpp_int;

namespace f2 {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + kWordBits - 1) / kWordBits; }

/// Largest k accepted by rank_census (2^C(k,2) graphs are enumerated).
inline constexpr std::size_t kCensusMaxK = 6;

}  // namespace f2

/// Dense matrix over F2, row-major with each row packed into 64-bit words.
/// Bits past `cols()` in the last word of a row are always zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_(f2::words_for(cols)), data_(rows * wpr_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  /// Rows given as little-endian bit masks (bit j = column j); cols <= 64.
  static BitMatrix from_rows(std::size_t cols, std::span<const std::uint64_t> rows) {
    require(cols <= 64, Errc::shape, "from_rows supports at most 64 columns");
    BitMatrix m(rows.size(), cols);
    const std::uint64_t mask = cols == 64 ? ~0ULL : ((1ULL << cols) - 1);
    for (std::size_t i = 0; i < rows.size(); ++i) m.data_[i * m.wpr_] = rows[i] & mask;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return wpr_; }

  bool get(std::size_t i, std::size_t j) const {
    check(i, j);
    return (data_[i * wpr_ + j / 64] >> (j % 64)) & 1U;
  }

  void set(std::size_t i, std::size_t j, bool value) {
    check(i, j);
    auto& w = data_[i * wpr_ + j / 64];
    const std::uint64_t bit = 1ULL << (j % 64);
    w = value ? (w | bit) : (w & ~bit);
  }

  void flip(std::size_t i, std::size_t j) {
    check(i, j);
    data_[i * wpr_ + j / 64] ^= 1ULL << (j % 64);
  }

  std::span<std::uint64_t> row(std::size_t i) { return {data_.data() + i * wpr_, wpr_}; }
  std::span<const std::uint64_t> row(std::size_t i) const { return {data_.data() + i * wpr_, wpr_}; }

  /// row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src) noexcept {
    std::uint64_t* d = data_.data() + dst * wpr_;
    const std::uint64_t* s = data_.data() + src * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
  }

  void swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * wpr_, data_.begin() + (a + 1) * wpr_, data_.begin() + b * wpr_);
  }

  bool row_is_zero(std::size_t i) const noexcept {
    const auto r = row(i);
    return std::all_of(r.begin(), r.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool is_symmetric_zero_diagonal() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (bit(i, i)) return false;
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (bit(i, j) != bit(j, i)) return false;
    }
    return true;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (bit(i, j)) t.data_[j * t.wpr_ + i / 64] |= 1ULL << (i % 64);
    return t;
  }

  /// Copy of the columns listed in `cols`, in that order.
  BitMatrix select_columns(std::span<const std::size_t> cols) const {
    BitMatrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (get(i, cols[c])) out.data_[i * out.wpr_ + c / 64] |= 1ULL << (c % 64);
    return out;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  bool bit(std::size_t i, std::size_t j) const noexcept { return (data_[i * wpr_ + j / 64] >> (j % 64)) & 1U; }

  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      fail(Errc::range, "BitMatrix index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

namespace f2 {

/// In-place forward elimination; returns the rank. Rows [0, rank) end up as
/// an echelon basis of the row space.
inline std::size_t eliminate(BitMatrix& m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = 1ULL << (c % 64);
    std::size_t p = rank;
    while (p < m.rows() && !(m.row(p)[w] & bit)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, rank);
    for (std::size_t i = rank + 1; i < m.rows(); ++i)
      if (m.row(i)[w] & bit) m.xor_row(i, rank);
    ++rank;
  }
  return rank;
}

/// Rank over F2 of a list of row vectors packed in single words.
inline std::size_t rank_of_words(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t r = rows[i];
    if (r == 0) continue;
    const std::uint64_t low = r & (~r + 1);
    ++rank;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & low) rows[j] ^= r;
  }
  return rank;
}

}  // namespace f2

/// Dimension of the row space of `m` over F2.
inline std::size_t rank_f2(const BitMatrix& m) {
  BitMatrix copy = m;
  return f2::eliminate(copy);
}

/// True iff `m` has full row rank. Requires rows <= cols.
inline bool is_full_rank(const BitMatrix& m) {
  require(m.rows() <= m.cols(), Errc::shape, "is_full_rank needs rows <= cols");
  return rank_f2(m) == m.rows();
}

/// Number of r-dimensional subspaces of F2^n.
inline BigCount gaussian_binomial(std::size_t n, std::size_t r) {
  require(r <= n, Errc::range, "gaussian_binomial needs r <= n");
  BigCount num = 1;
  BigCount den = 1;
  for (std::size_t i = 0; i < r; ++i) {
    num *= (BigCount(1) << (n - i)) - 1;
    den *= (BigCount(1) << (i + 1)) - 1;
  }
  return num / den;
}

/// Adjacency rows (bit j of row i) of the graph on [k] with colex edge mask.
inline std::vector<std::uint64_t> adjacency_rows_from_mask(std::size_t k, std::uint64_t mask) {
  std::vector<std::uint64_t> rows(k, 0);
  std::size_t idx = 0;
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i, ++idx)
      if ((mask >> idx) & 1U) {
        rows[i] |= 1ULL << j;
        rows[j] |= 1ULL << i;
      }
  return rows;
}

/// Exact number of labelled graphs on [k] whose adjacency matrix has each
/// F2 rank. Every rank 0..k appears as a key. Requires k <= cap.
inline std::map<std::size_t, std::uint64_t> rank_census(std::size_t k, std::size_t cap = f2::kCensusMaxK) {
  if (k > cap) fail(Errc::budget, "rank_census enumerates 2^C(k,2) graphs; k=" + std::to_string(k) + " exceeds cap");
  std::map<std::size_t, std::uint64_t> census;
  for (std::size_t r = 0; r <= k; ++r) census[r] = 0;
  const std::uint64_t total = 1ULL << pair_count(k);
  for (std::uint64_t mask = 0; mask < total; ++mask) ++census[f2::rank_of_words(adjacency_rows_from_mask(k, mask))];
  return census;
}

}  // namespace vmlab

#endif  // VMLAB_F2_HPP
