#ifndef VMLAB_DYADIC_HPP
#define VMLAB_DYADIC_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vmlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational num / 2^exp. Values are compared by value, not by
/// representation: 1/2 == 2/4.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt num, std::size_t exp) : num_(std::move(num)), exp_(exp) {}

  static Dyadic integer(long long v) { return Dyadic(BigInt(v), 0); }
  /// 2^-e
  static Dyadic pow2_neg(std::size_t e) { return Dyadic(BigInt(1), e); }

  const BigInt& numerator() const { return num_; }
  std::size_t exponent() const { return exp_; }

  /// Lowest-terms form (odd numerator or exponent 0).
  Dyadic normalized() const {
    if (num_ == 0) return Dyadic(0, 0);
    const std::size_t tz = std::min<std::size_t>(boost::multiprecision::lsb(abs(num_)), exp_);
    return Dyadic(num_ >> tz, exp_ - tz);
  }

  /// Same value written over 2^e, e >= exponent().
  BigInt scaled_to(std::size_t e) const { return num_ << (e - exp_); }

  int sign() const { return num_.sign(); }
  Dyadic abs_value() const { return Dyadic(abs(num_), exp_); }
  double to_double() const { return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_)); }

  std::string to_string() const {
    const Dyadic n = normalized();
    if (n.exp_ == 0) return n.num_.str();
    return n.num_.str() + "/2^" + std::to_string(n.exp_);
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const std::size_t e = std::max(a.exp_, b.exp_);
    return Dyadic(a.scaled_to(e) + b.scaled_to(e), e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    const std::size_t e = std::max(a.exp_, b.exp_);
    return Dyadic(a.scaled_to(e) - b.scaled_to(e), e);
  }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    const std::size_t e = std::max(a.exp_, b.exp_);
    return a.scaled_to(e) == b.scaled_to(e);
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const std::size_t e = std::max(a.exp_, b.exp_);
    const BigInt x = a.scaled_to(e), y = b.scaled_to(e);
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  BigInt num_ = 0;
  std::size_t exp_ = 0;
};

inline Dyadic pow(const Dyadic& x, std::size_t n) {
  Dyadic out = Dyadic::integer(1);
  for (std::size_t i = 0; i < n; ++i) out = out * x;
  return out;
}

}  // namespace vmlab

#endif  // VMLAB_DYADIC_HPP
