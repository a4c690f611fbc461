#ifndef FLATPIN_ROOT_TWO_DYADIC_HPP
#define FLATPIN_ROOT_TWO_DYADIC_HPP

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include "flatpin/error.hpp"

namespace flatpin {

/// Exact element of Z[sqrt2, 1/2], stored as (a + b*sqrt2) / 2^e.
///
/// The representation is normalized: either e == 0 or at least one of a, b
/// is odd. Two values are equal iff their normalized fields are equal.
class RootTwoDyadic {
 public:
  constexpr RootTwoDyadic() = default;
  constexpr RootTwoDyadic(std::int64_t integer) : a_(integer) {}  // NOLINT(implicit)
  RootTwoDyadic(std::int64_t a, std::int64_t b, int e) : a_(a), b_(b), e_(e) {
    if (e < 0) throw Error(ErrorKind::InvalidParameters, "negative dyadic exponent");
    normalize();
  }

  /// sqrt2 / 2, the coefficient attached to a reflection across (e_p -/+ e_q).
  static RootTwoDyadic half_root_two() { return RootTwoDyadic(0, 1, 1); }

  std::int64_t rational_part() const noexcept { return a_; }
  std::int64_t root_two_part() const noexcept { return b_; }
  int exponent() const noexcept { return e_; }

  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }
  bool is_integer() const noexcept { return b_ == 0 && e_ == 0; }
  bool is_unit_sign() const noexcept { return is_integer() && (a_ == 1 || a_ == -1); }

  friend bool operator==(const RootTwoDyadic&, const RootTwoDyadic&) = default;

  RootTwoDyadic operator-() const {
    return RootTwoDyadic(detail::checked_sub(0, a_), detail::checked_sub(0, b_), e_);
  }

  friend RootTwoDyadic operator+(const RootTwoDyadic& x, const RootTwoDyadic& y) {
    const int e = x.e_ > y.e_ ? x.e_ : y.e_;
    const auto xs = scale_factor(e - x.e_);
    const auto ys = scale_factor(e - y.e_);
    return RootTwoDyadic(
        detail::checked_add(detail::checked_mul(x.a_, xs), detail::checked_mul(y.a_, ys)),
        detail::checked_add(detail::checked_mul(x.b_, xs), detail::checked_mul(y.b_, ys)), e);
  }

  friend RootTwoDyadic operator-(const RootTwoDyadic& x, const RootTwoDyadic& y) { return x + (-y); }

  friend RootTwoDyadic operator*(const RootTwoDyadic& x, const RootTwoDyadic& y) {
    // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r,  r = sqrt2
    const auto ac = detail::checked_mul(x.a_, y.a_);
    const auto bd2 = detail::checked_mul(2, detail::checked_mul(x.b_, y.b_));
    const auto ad = detail::checked_mul(x.a_, y.b_);
    const auto bc = detail::checked_mul(x.b_, y.a_);
    return RootTwoDyadic(detail::checked_add(ac, bd2), detail::checked_add(ad, bc), x.e_ + y.e_);
  }

  RootTwoDyadic& operator+=(const RootTwoDyadic& y) { return *this = *this + y; }
  RootTwoDyadic& operator*=(const RootTwoDyadic& y) { return *this = *this * y; }

  /// Canonical text form, e.g. "1", "-1/2", "sqrt2/2", "(1+3*sqrt2)/4".
  std::string str() const {
    std::ostringstream out;
    std::string num;
    if (b_ == 0) {
      num = std::to_string(a_);
    } else {
      std::string root;
      if (b_ == 1) root = "sqrt2";
      else if (b_ == -1) root = "-sqrt2";
      else root = std::to_string(b_) + "*sqrt2";
      if (a_ == 0) num = root;
      else num = std::to_string(a_) + (b_ > 0 ? "+" : "") + root;
    }
    if (e_ == 0) return num;
    const bool wrap = a_ != 0 && b_ != 0;
    out << (wrap ? "(" : "") << num << (wrap ? ")" : "") << "/" << (std::int64_t{1} << e_);
    return out.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const RootTwoDyadic& x) { return os << x.str(); }

 private:
  static std::int64_t scale_factor(int shift) {
    if (shift >= 62) throw Error(ErrorKind::Overflow, "dyadic exponent too large");
    return std::int64_t{1} << shift;
  }

  void normalize() {
    while (e_ > 0 && a_ % 2 == 0 && b_ % 2 == 0) {
      a_ /= 2;
      b_ /= 2;
      --e_;
    }
    if (a_ == 0 && b_ == 0) e_ = 0;
    if (e_ >= 62) throw Error(ErrorKind::Overflow, "dyadic exponent too large");
  }

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  int e_ = 0;
};

}  // namespace flatpin

#endif  // FLATPIN_ROOT_TWO_DYADIC_HPP
