#ifndef FLATPIN_DYADIC_HPP
#define FLATPIN_DYADIC_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "flatpin/error.hpp"

namespace flatpin {

/// Exact rational number with power-of-two denominator, num / 2^exp.
/// Normalized so that exp == 0 or num is odd.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)
  Dyadic(std::int64_t num, int exp) : num_(num), exp_(exp) {
    if (exp < 0) throw Error(ErrorKind::InvalidParameters, "negative dyadic exponent");
    normalize();
  }

  static Dyadic half() { return Dyadic(1, 1); }

  std::int64_t numerator() const noexcept { return num_; }
  int exponent() const noexcept { return exp_; }
  std::int64_t denominator() const noexcept { return std::int64_t{1} << exp_; }

  bool is_integer() const noexcept { return exp_ == 0; }
  bool is_zero() const noexcept { return num_ == 0; }

  /// Only meaningful when is_integer().
  std::int64_t to_integer() const {
    if (!is_integer()) throw Error(ErrorKind::InvalidParameters, "dyadic is not an integer: " + str());
    return num_;
  }

  std::int64_t floor() const noexcept {
    if (exp_ == 0) return num_;
    return num_ >> exp_;  // arithmetic shift rounds toward -inf
  }

  /// Representative of x mod 1 in [0, 1).
  Dyadic frac() const { return *this - Dyadic(floor()); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;

  friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
    const int e = x.exp_ > y.exp_ ? x.exp_ : y.exp_;
    const auto lhs = detail::checked_mul(x.num_, scale(e - x.exp_));
    const auto rhs = detail::checked_mul(y.num_, scale(e - y.exp_));
    return lhs <=> rhs;
  }

  Dyadic operator-() const { return Dyadic(detail::checked_sub(0, num_), exp_); }

  friend Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    const int e = x.exp_ > y.exp_ ? x.exp_ : y.exp_;
    return Dyadic(detail::checked_add(detail::checked_mul(x.num_, scale(e - x.exp_)),
                                      detail::checked_mul(y.num_, scale(e - y.exp_))),
                  e);
  }
  friend Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }
  friend Dyadic operator*(const Dyadic& x, const Dyadic& y) {
    return Dyadic(detail::checked_mul(x.num_, y.num_), x.exp_ + y.exp_);
  }

  Dyadic& operator+=(const Dyadic& y) { return *this = *this + y; }
  Dyadic& operator-=(const Dyadic& y) { return *this = *this - y; }

  /// "p" for integers, "p/q" otherwise (q a power of two).
  std::string str() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(denominator());
  }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& x) { return os << x.str(); }

 private:
  static std::int64_t scale(int shift) {
    if (shift >= 62) throw Error(ErrorKind::Overflow, "dyadic exponent too large");
    return std::int64_t{1} << shift;
  }

  void normalize() {
    while (exp_ > 0 && num_ % 2 == 0) {
      num_ /= 2;
      --exp_;
    }
    if (num_ == 0) exp_ = 0;
    if (exp_ >= 62) throw Error(ErrorKind::Overflow, "dyadic exponent too large");
  }

  std::int64_t num_ = 0;
  int exp_ = 0;
};

using DyadicVector = std::vector<Dyadic>;
using LatticeVector = std::vector<std::int64_t>;

inline DyadicVector to_dyadic(const LatticeVector& v) { return DyadicVector(v.begin(), v.end()); }

inline bool is_integral(const DyadicVector& v) {
  for (const auto& x : v)
    if (!x.is_integer()) return false;
  return true;
}

inline LatticeVector to_lattice(const DyadicVector& v) {
  LatticeVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_integer());
  return out;
}

inline DyadicVector add(const DyadicVector& x, const DyadicVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "vector sizes differ");
  DyadicVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

inline DyadicVector subtract(const DyadicVector& x, const DyadicVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "vector sizes differ");
  DyadicVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

inline LatticeVector add(const LatticeVector& x, const LatticeVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "vector sizes differ");
  LatticeVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = detail::checked_add(x[i], y[i]);
  return out;
}

/// Coordinatewise reduction mod Z^n into [0, 1)^n.
inline DyadicVector reduce_mod_lattice(const DyadicVector& v) {
  DyadicVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.frac());
  return out;
}

}  // namespace flatpin

#endif  // FLATPIN_DYADIC_HPP
