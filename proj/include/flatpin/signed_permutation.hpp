#ifndef FLATPIN_SIGNED_PERMUTATION_HPP
#define FLATPIN_SIGNED_PERMUTATION_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "flatpin/dyadic.hpp"
#include "flatpin/error.hpp"

namespace flatpin {

/// Orthogonal integer matrix sending e_i to sign[i] * e_{image[i]}.
/// Axes are 0-based in the API; text renderings are 1-based.
class SignedPermutation {
 public:
  SignedPermutation() = default;

  SignedPermutation(std::vector<int> image, std::vector<int> sign)
      : image_(std::move(image)), sign_(std::move(sign)) {
    const std::size_t n = image_.size();
    if (sign_.size() != n) throw Error(ErrorKind::DimensionMismatch, "image and sign sizes differ");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (image_[i] < 0 || static_cast<std::size_t>(image_[i]) >= n || seen[image_[i]])
        throw Error(ErrorKind::NotSignedPermutation, "image is not a permutation");
      seen[image_[i]] = true;
      if (sign_[i] != 1 && sign_[i] != -1)
        throw Error(ErrorKind::NotSignedPermutation, "axis signs must be +1 or -1");
    }
  }

  static SignedPermutation identity(int n) {
    std::vector<int> image(n);
    for (int i = 0; i < n; ++i) image[i] = i;
    return {std::move(image), std::vector<int>(n, 1)};
  }

  static SignedPermutation diagonal(const std::vector<int>& signs) {
    std::vector<int> image(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) image[i] = static_cast<int>(i);
    return {std::move(image), signs};
  }

  int dim() const noexcept { return static_cast<int>(image_.size()); }
  int image(int axis) const { return image_.at(axis); }
  int sign(int axis) const { return sign_.at(axis); }
  const std::vector<int>& images() const noexcept { return image_; }
  const std::vector<int>& signs() const noexcept { return sign_; }

  /// Matrix entry M[row][col].
  int entry(int row, int col) const { return image_.at(col) == row ? sign_[col] : 0; }

  bool is_identity() const noexcept {
    for (int i = 0; i < dim(); ++i)
      if (image_[i] != i || sign_[i] != 1) return false;
    return true;
  }

  bool is_diagonal() const noexcept {
    for (int i = 0; i < dim(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  bool is_involution() const { return (*this * *this).is_identity(); }

  int determinant() const {
    int det = 1;
    std::vector<bool> seen(dim(), false);
    for (int i = 0; i < dim(); ++i) {
      det *= sign_[i];
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = image_[j]) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) det = -det;
    }
    return det;
  }

  /// Number of axes with B e_i = e_i.
  int fixed_axis_count() const noexcept {
    int d = 0;
    for (int i = 0; i < dim(); ++i)
      if (image_[i] == i && sign_[i] == 1) ++d;
    return d;
  }

  /// Matrix product: (A * B) applies B first.
  friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "signed permutation sizes differ");
    std::vector<int> image(a.dim()), sign(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
      image[i] = a.image_[b.image_[i]];
      sign[i] = b.sign_[i] * a.sign_[b.image_[i]];
    }
    return {std::move(image), std::move(sign)};
  }

  SignedPermutation inverse() const {
    std::vector<int> image(dim()), sign(dim());
    for (int i = 0; i < dim(); ++i) {
      image[image_[i]] = i;
      sign[image_[i]] = sign_[i];
    }
    return {std::move(image), std::move(sign)};
  }

  template <class Vec>
  Vec apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim()) throw Error(ErrorKind::DimensionMismatch, "vector size");
    Vec out(x.size());
    for (int i = 0; i < dim(); ++i) out[image_[i]] = sign_[i] < 0 ? -x[i] : x[i];
    return out;
  }

  /// Block-diagonal sum diag(A, B).
  friend SignedPermutation direct_sum(const SignedPermutation& a, const SignedPermutation& b) {
    std::vector<int> image = a.image_;
    std::vector<int> sign = a.sign_;
    for (int i = 0; i < b.dim(); ++i) {
      image.push_back(b.image_[i] + a.dim());
      sign.push_back(b.sign_[i]);
    }
    return {std::move(image), std::move(sign)};
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation& a, const SignedPermutation& b) {
    if (auto c = a.image_ <=> b.image_; c != 0) return c;
    return a.sign_ <=> b.sign_;
  }

  /// "diag(1,-1,1)" for diagonal matrices, otherwise the cycle notation used in group files.
  std::string str() const;

 private:
  std::vector<int> image_;
  std::vector<int> sign_;
};

/// Decomposition of a signed-permutation involution into fixed axes, flipped
/// axes, and 2-cycles (p, q), p < q, with e_p -> s e_q and e_q -> s e_p.
struct InvolutionCycles {
  struct TwoCycle {
    int p;
    int q;
    int sign;
  };
  std::vector<int> fixed;
  std::vector<int> flipped;
  std::vector<TwoCycle> swaps;

  int j() const noexcept { return static_cast<int>(swaps.size()); }
  int h() const noexcept { return static_cast<int>(flipped.size()); }
};

/// Throws NotInvolution when B^2 != Id (longer cycles, or a 2-cycle with
/// opposite signs whose square is -Id on its block).
inline InvolutionCycles involution_cycles(const SignedPermutation& b) {
  InvolutionCycles out;
  for (int i = 0; i < b.dim(); ++i) {
    const int t = b.image(i);
    if (t == i) {
      (b.sign(i) == 1 ? out.fixed : out.flipped).push_back(i);
      continue;
    }
    if (b.image(t) != i)
      throw Error(ErrorKind::NotInvolution, "cycle longer than 2 through axis " + std::to_string(i + 1));
    if (b.sign(i) != b.sign(t))
      throw Error(ErrorKind::NotInvolution,
                  "2-cycle (" + std::to_string(i + 1) + " " + std::to_string(t + 1) + ") has mixed signs");
    if (i < t) out.swaps.push_back({i, t, b.sign(i)});
  }
  return out;
}

inline std::string SignedPermutation::str() const {
  std::string out;
  if (is_diagonal()) {
    out = "diag(";
    for (int i = 0; i < dim(); ++i) out += (i ? "," : "") + std::to_string(sign_[i]);
    return out + ")";
  }
  out = "perm(";
  std::vector<bool> seen(dim(), false);
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    if (seen[i]) continue;
    out += first ? "" : " ";
    first = false;
    std::string cyc;
    int j = i;
    bool same_sign = true;
    do {
      seen[j] = true;
      cyc += (cyc.empty() ? "" : " ") + std::to_string(j + 1);
      same_sign = same_sign && sign_[j] == sign_[i];
      j = image_[j];
    } while (j != i);
    const std::string s = sign_[i] > 0 ? "+" : "-";
    if (image_[i] == i) out += std::to_string(i + 1) + s;
    else if (same_sign) out += "(" + cyc + ")" + s;
    else out += "(" + cyc + ")?";
  }
  return out + ")";
}

}  // namespace flatpin

#endif  // FLATPIN_SIGNED_PERMUTATION_HPP
