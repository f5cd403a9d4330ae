#ifndef VMLAB_STATS_HPP
#define VMLAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "error.hpp"

namespace vmlab::stats {

struct Interval {
  double lo = 0;
  double hi = 0;
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

/// Two-sided normal quantile for confidence `level` (0.95 -> 1.95996...).
inline double z_for(double level) {
  require(level > 0 && level < 1, Errc::range, "confidence level must lie in (0,1)");
  return boost::math::quantile(boost::math::normal(), 0.5 + level / 2);
}

/// Wilson score interval for `hits` successes out of `n`.
inline Interval wilson(std::size_t hits, std::size_t n, double level = 0.95) {
  if (n == 0) return {0, 1};
  const double z = z_for(level);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Running mean and variance (Welford).
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
  /// Standard error of the mean.
  double sem() const { return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

inline Moments moments_of(std::span<const double> xs) {
  Moments m;
  for (double x : xs) m.add(x);
  return m;
}

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
};

inline double chi_square_sf(double x, std::size_t dof) {
  require(dof > 0, Errc::range, "chi-square needs at least one degree of freedom");
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(static_cast<double>(dof)), x));
}

/// Goodness of fit of observed counts against expected probabilities.
/// Categories with zero expected probability must have zero count.
inline ChiSquare chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probs) {
  require(observed.size() == probs.size() && observed.size() >= 2, Errc::precondition,
          "need matching observed/expected vectors with at least two categories");
  double n = 0;
  for (std::size_t o : observed) n += static_cast<double>(o);
  ChiSquare out;
  std::size_t used = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probs[i] <= 0) {
      require(observed[i] == 0, Errc::precondition, "observation in a zero-probability category");
      continue;
    }
    const double e = n * probs[i];
    const double d = static_cast<double>(observed[i]) - e;
    out.statistic += d * d / e;
    ++used;
  }
  out.dof = used - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

/// Pearson independence test on an r x c contingency table (row-major).
inline ChiSquare chi_square_independence(std::span<const std::size_t> table, std::size_t rows, std::size_t cols) {
  require(table.size() == rows * cols && rows >= 2 && cols >= 2, Errc::precondition, "bad contingency table shape");
  std::vector<double> rsum(rows, 0), csum(cols, 0);
  double n = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = static_cast<double>(table[i * cols + j]);
      rsum[i] += x;
      csum[j] += x;
      n += x;
    }
  ChiSquare out;
  std::size_t live_r = 0, live_c = 0;
  for (double r : rsum) live_r += r > 0;
  for (double c : csum) live_c += c > 0;
  require(live_r >= 2 && live_c >= 2, Errc::precondition, "contingency table has an empty margin");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (rsum[i] == 0 || csum[j] == 0) continue;
      const double e = rsum[i] * csum[j] / n;
      const double d = static_cast<double>(table[i * cols + j]) - e;
      out.statistic += d * d / e;
    }
  out.dof = (live_r - 1) * (live_c - 1);
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

}  // namespace vmlab::stats

#endif  // VMLAB_STATS_HPP
