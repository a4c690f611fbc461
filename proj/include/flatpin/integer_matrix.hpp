#ifndef FLATPIN_INTEGER_MATRIX_HPP
#define FLATPIN_INTEGER_MATRIX_HPP

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "flatpin/dyadic.hpp"
#include "flatpin/error.hpp"

namespace flatpin {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  void append_row(const std::vector<std::int64_t>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "row length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
    IntMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j)
          out(i, j) = detail::checked_add(out(i, j), detail::checked_mul(a(i, k), b(k, j)));
      }
    return out;
  }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "vector size");
    std::vector<std::int64_t> out(rows_, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        out[i] = detail::checked_add(out[i], detail::checked_mul((*this)(i, j), x[j]));
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  void swap_rows(int a, int b) {
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(int a, int b) {
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(int dst, int src, std::int64_t factor) {
    if (factor == 0) return;
    for (int j = 0; j < cols_; ++j)
      (*this)(dst, j) = detail::checked_add((*this)(dst, j), detail::checked_mul(factor, (*this)(src, j)));
  }
  /// col[dst] += factor * col[src]
  void add_col(int dst, int src, std::int64_t factor) {
    if (factor == 0) return;
    for (int i = 0; i < rows_; ++i)
      (*this)(i, dst) = detail::checked_add((*this)(i, dst), detail::checked_mul(factor, (*this)(i, src)));
  }
  void negate_row(int r) {
    for (int j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank.
struct SmithForm {
  IntMatrix left;      // U
  IntMatrix diagonal;  // D
  IntMatrix right;     // V
  std::vector<std::int64_t> factors;  // nonzero diagonal entries, positive
  int rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  const auto floor_div = [](std::int64_t x, std::int64_t y) {
    std::int64_t q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
  };

  int t = 0;
  for (; t < m && t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (d(i, j) != 0 && (pi < 0 || std::llabs(d(i, j)) < std::llabs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const auto q = floor_div(d(i, t), d(t, t));
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const auto q = floor_div(d(t, j), d(t, t));
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        int bi = t, bj = t;
        for (int i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && std::llabs(d(i, t)) < std::llabs(d(bi, bj))) { bi = i; bj = t; }
        for (int j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && std::llabs(d(t, j)) < std::llabs(d(bi, bj))) { bi = t; bj = j; }
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      d.add_row(t, bad, 1);
      u.add_row(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithForm out{std::move(u), std::move(d), std::move(v), {}, t};
  for (int i = 0; i < t; ++i) out.factors.push_back(out.diagonal(i, i));
  return out;
}

/// Some integer solution of A x = rhs, or nullopt when none exists. A
/// non-integral rhs has no integer solution.
inline std::optional<LatticeVector> solve_integer_system(const IntMatrix& a, const DyadicVector& rhs) {
  if (static_cast<int>(rhs.size()) != a.rows()) throw Error(ErrorKind::DimensionMismatch, "rhs size");
  if (!is_integral(rhs)) return std::nullopt;
  const SmithForm snf = smith_normal_form(a);
  const auto transformed = snf.left.apply(to_lattice(rhs));
  std::vector<std::int64_t> y(a.cols(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      if (transformed[i] % snf.factors[i] != 0) return std::nullopt;
      y[i] = transformed[i] / snf.factors[i];
    } else if (transformed[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.right.apply(y);
}

}  // namespace flatpin

#endif  // FLATPIN_INTEGER_MATRIX_HPP
