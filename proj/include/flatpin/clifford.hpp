#ifndef FLATPIN_CLIFFORD_HPP
#define FLATPIN_CLIFFORD_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "flatpin/error.hpp"
#include "flatpin/root_two_dyadic.hpp"
#include "flatpin/signed_permutation.hpp"

namespace flatpin {

/// Sign of the generator squares: e_i^2 = +1 in Cl+(n), -1 in Cl-(n).
enum class Convention { Plus, Minus };

inline std::string_view to_string(Convention c) { return c == Convention::Plus ? "Cl+" : "Cl-"; }

/// Basis blade e_{i1} ... e_{im}, i1 < ... < im, as a bitmask (bit i <-> e_{i+1}).
using Blade = std::uint64_t;

inline constexpr int kMaxDimension = 64;

inline int blade_grade(Blade b) noexcept { return std::popcount(b); }

inline Blade dimension_mask(int n) noexcept {
  return n >= 64 ? ~Blade{0} : (Blade{1} << n) - 1;
}

struct BladeProduct {
  int scalar;  // +1 or -1
  Blade blade;
};

/// Product of two basis blades. The sign counts the transpositions needed to
/// sort the concatenated word, times e_i^2 for every repeated generator.
inline BladeProduct blade_mul(Blade x, Blade y, Convention convention) noexcept {
  int swaps = 0;
  for (Blade rest = y; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const Blade above = j >= 63 ? Blade{0} : ~((Blade{2} << j) - 1);
    swaps += std::popcount(x & above);
  }
  int scalar = (swaps % 2) ? -1 : 1;
  if (convention == Convention::Minus && (std::popcount(x & y) % 2)) scalar = -scalar;
  return {scalar, x ^ y};
}

/// Sparse element of Cl+(n) or Cl-(n) with exact coefficients. Zero
/// coefficients are never stored.
class CliffordElement {
 public:
  using Terms = std::map<Blade, RootTwoDyadic>;

  CliffordElement(int n, Convention convention) : n_(n), convention_(convention) {
    if (n < 0 || n > kMaxDimension)
      throw Error(ErrorKind::InvalidParameters, "dimension must lie in [0, 64]");
  }

  static CliffordElement scalar(int n, Convention c, const RootTwoDyadic& value) {
    CliffordElement out(n, c);
    out.add_term(0, value);
    return out;
  }

  static CliffordElement one(int n, Convention c) { return scalar(n, c, 1); }

  /// The generator e_{axis+1}.
  static CliffordElement generator(int n, Convention c, int axis) {
    CliffordElement out(n, c);
    if (axis < 0 || axis >= n) throw Error(ErrorKind::InvalidParameters, "generator index out of range");
    out.add_term(Blade{1} << axis, 1);
    return out;
  }

  int dim() const noexcept { return n_; }
  Convention convention() const noexcept { return convention_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  RootTwoDyadic coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? RootTwoDyadic{} : it->second;
  }

  /// True when the element is c * 1 for some scalar c.
  bool is_scalar() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// +1 or -1 when the element equals that scalar, 0 otherwise.
  int unit_sign() const {
    if (!is_scalar() || terms_.empty()) return 0;
    const auto& c = terms_.begin()->second;
    if (!c.is_unit_sign()) return 0;
    return static_cast<int>(c.rational_part());
  }

  void add_term(Blade b, const RootTwoDyadic& c) {
    if (b & ~dimension_mask(n_)) throw Error(ErrorKind::InvalidParameters, "blade outside dimension");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend bool operator==(const CliffordElement&, const CliffordElement&) = default;

  friend CliffordElement operator+(const CliffordElement& x, const CliffordElement& y) {
    check_compatible(x, y);
    CliffordElement out = x;
    for (const auto& [b, c] : y.terms_) out.add_term(b, c);
    return out;
  }

  CliffordElement operator-() const {
    CliffordElement out(n_, convention_);
    for (const auto& [b, c] : terms_) out.terms_.emplace(b, -c);
    return out;
  }

  friend CliffordElement operator-(const CliffordElement& x, const CliffordElement& y) { return x + (-y); }

  friend CliffordElement operator*(const RootTwoDyadic& s, const CliffordElement& x) {
    CliffordElement out(x.n_, x.convention_);
    for (const auto& [b, c] : x.terms_) out.add_term(b, s * c);
    return out;
  }

  /// Bilinear extension of blade_mul.
  friend CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
    check_compatible(x, y);
    CliffordElement out(x.n_, x.convention_);
    for (const auto& [bx, cx] : x.terms_) {
      for (const auto& [by, cy] : y.terms_) {
        const auto p = blade_mul(bx, by, x.convention_);
        const auto c = cx * cy;
        out.add_term(p.blade, p.scalar > 0 ? c : -c);
      }
    }
    return out;
  }

  std::string str() const;

 private:
  static void check_compatible(const CliffordElement& x, const CliffordElement& y) {
    if (x.n_ != y.n_) throw Error(ErrorKind::DimensionMismatch, "Clifford elements of different dimension");
    if (x.convention_ != y.convention_)
      throw Error(ErrorKind::ConventionMismatch, "Clifford elements of different convention");
  }

  int n_;
  Convention convention_;
  Terms terms_;
};

inline std::string blade_str(Blade b) {
  if (b == 0) return "1";
  std::string out;
  for (Blade rest = b; rest; rest &= rest - 1) out += "e" + std::to_string(std::countr_zero(rest) + 1);
  return out;
}

inline std::string CliffordElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    std::string coeff = c.str();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (b == 0) out += coeff;
    else if (coeff == "1") out += blade_str(b);
    else if (coeff.find_first_of("+-") != std::string::npos) out += "(" + coeff + ")" + blade_str(b);
    else out += coeff + "*" + blade_str(b);
  }
  return out;
}

/// alpha: scales each grade-m blade by (-1)^m.
inline CliffordElement grade_involution(const CliffordElement& x) {
  CliffordElement out(x.dim(), x.convention());
  for (const auto& [b, c] : x.terms()) out.add_term(b, blade_grade(b) % 2 ? -c : c);
  return out;
}

/// Reverses every blade word: grade m picks up (-1)^{m(m-1)/2}.
inline CliffordElement reversal(const CliffordElement& x) {
  CliffordElement out(x.dim(), x.convention());
  for (const auto& [b, c] : x.terms()) {
    const int m = blade_grade(b);
    out.add_term(b, (m * (m - 1) / 2) % 2 ? -c : c);
  }
  return out;
}

/// Covering map mu(u)(x) = alpha(u) x u^{-1}, restricted to elements whose
/// image permutes the signed coordinate axes.
inline SignedPermutation mu_apply(const CliffordElement& u) {
  const int n = u.dim();
  const CliffordElement rev = reversal(u);
  const int norm = (u * rev).unit_sign();
  if (norm == 0) throw Error(ErrorKind::NotPinElement, "u * reversal(u) is not +-1 for " + u.str());
  // u^{-1} = reversal(u) / norm and norm = +-1.
  const CliffordElement inv = norm > 0 ? rev : -rev;
  const CliffordElement twisted = grade_involution(u);
  std::vector<int> image(n), sign(n);
  for (int i = 0; i < n; ++i) {
    const CliffordElement y = twisted * CliffordElement::generator(n, u.convention(), i) * inv;
    if (y.terms().size() != 1 || blade_grade(y.terms().begin()->first) != 1 ||
        !y.terms().begin()->second.is_unit_sign())
      throw Error(ErrorKind::NotSignedPermutation, "image of e" + std::to_string(i + 1) + " is " + y.str());
    image[i] = std::countr_zero(y.terms().begin()->first);
    sign[i] = static_cast<int>(y.terms().begin()->second.rational_part());
  }
  try {
    return SignedPermutation(std::move(image), std::move(sign));
  } catch (const Error&) {
    throw Error(ErrorKind::NotSignedPermutation, "images of the basis are not a signed permutation");
  }
}

/// Canonical preimage of an involution B under mu: the ordered product, by
/// least axis, of e_i for each flipped axis i and (sqrt2/2)(e_p - s e_q) for
/// each 2-cycle e_p -> s e_q.
inline CliffordElement u_pre(const SignedPermutation& b, Convention convention) {
  const int n = b.dim();
  const InvolutionCycles cyc = involution_cycles(b);
  std::map<int, CliffordElement> factors;
  for (int i : cyc.flipped) factors.emplace(i, CliffordElement::generator(n, convention, i));
  for (const auto& s : cyc.swaps) {
    CliffordElement f(n, convention);
    f.add_term(Blade{1} << s.p, RootTwoDyadic::half_root_two());
    f.add_term(Blade{1} << s.q, s.sign > 0 ? -RootTwoDyadic::half_root_two() : RootTwoDyadic::half_root_two());
    factors.emplace(s.p, std::move(f));
  }
  CliffordElement out = CliffordElement::one(n, convention);
  for (const auto& [axis, f] : factors) out = out * f;
  return out;
}

/// Closed form of (u_{j,h})^2 for j 2-cycles and h flipped axes.
inline int u_square_formula(int j, int h, Convention convention) {
  if (j < 0 || h < 0) throw Error(ErrorKind::InvalidParameters, "cycle counts must be non-negative");
  const auto parity = [](int e) { return e % 2 ? -1 : 1; };
  if (convention == Convention::Plus) return parity(j * h) * parity(j / 2) * parity(h / 2);
  return parity(j * h) * parity((j + 1) / 2) * parity((h + 1) / 2);
}

}  // namespace flatpin

#endif  // FLATPIN_CLIFFORD_HPP
