#ifndef FLATPIN_GF2_HPP
#define FLATPIN_GF2_HPP

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "flatpin/error.hpp"

namespace flatpin {

/// Bit vector over GF(2) for up to 64 unknowns; bit i <-> unknown i.
using GF2Word = std::uint64_t;

/// Dynamic bitset used to record which input rows were combined.
class RowSet {
 public:
  explicit RowSet(std::size_t size = 0) : words_((size + 63) / 64, 0) {}
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  RowSet& operator^=(const RowSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (auto bits = words_[w]; bits; bits &= bits - 1) out.push_back(w * 64 + std::countr_zero(bits));
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

/// Equation sum_{i in coeffs} x_i = rhs over GF(2).
struct GF2Equation {
  GF2Word coeffs = 0;
  bool rhs = false;
  friend bool operator==(const GF2Equation&, const GF2Equation&) = default;
};

struct GF2Result {
  int unknowns = 0;
  bool consistent = false;
  int rank = 0;
  /// Reduced row echelon form of the consistent system, one row per pivot.
  std::vector<GF2Equation> reduced;
  std::vector<int> pivot_columns;
  std::vector<int> free_columns;
  /// Solution with every free unknown set to 0.
  GF2Word particular = 0;
  /// One basis vector per free unknown, in free_columns order.
  std::vector<GF2Word> nullspace;
  /// Input rows whose sum is 0 = 1 (empty when consistent).
  std::vector<std::size_t> certificate;
};

/// Gauss-Jordan elimination over GF(2).
inline GF2Result gf2_solve(const std::vector<GF2Equation>& rows, int unknowns) {
  if (unknowns < 0 || unknowns > 64) throw Error(ErrorKind::InvalidParameters, "GF(2) systems support up to 64 unknowns");
  std::vector<GF2Equation> work = rows;
  std::vector<RowSet> origin(rows.size(), RowSet(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) origin[i].flip(i);

  GF2Result out;
  out.unknowns = unknowns;
  std::size_t next = 0;
  for (int col = 0; col < unknowns; ++col) {
    const GF2Word bit = GF2Word{1} << col;
    std::size_t pivot = next;
    while (pivot < work.size() && !(work[pivot].coeffs & bit)) ++pivot;
    if (pivot == work.size()) {
      out.free_columns.push_back(col);
      continue;
    }
    std::swap(work[pivot], work[next]);
    std::swap(origin[pivot], origin[next]);
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r != next && (work[r].coeffs & bit)) {
        work[r].coeffs ^= work[next].coeffs;
        work[r].rhs = work[r].rhs != work[next].rhs;
        origin[r] ^= origin[next];
      }
    }
    out.pivot_columns.push_back(col);
    ++next;
  }
  out.rank = static_cast<int>(next);
  for (std::size_t r = next; r < work.size(); ++r) {
    if (work[r].rhs) {
      out.consistent = false;
      out.certificate = origin[r].indices();
      return out;
    }
  }
  out.consistent = true;
  out.reduced.assign(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(next));
  for (std::size_t r = 0; r < next; ++r)
    if (out.reduced[r].rhs) out.particular |= GF2Word{1} << out.pivot_columns[r];
  for (int f : out.free_columns) {
    GF2Word v = GF2Word{1} << f;
    for (std::size_t r = 0; r < next; ++r)
      if (out.reduced[r].coeffs & (GF2Word{1} << f)) v |= GF2Word{1} << out.pivot_columns[r];
    out.nullspace.push_back(v);
  }
  return out;
}

/// Canonical reduced row echelon form of the augmented matrix [coeffs | rhs]:
/// two systems have the same row space iff these agree.
inline std::vector<GF2Equation> gf2_row_space(const std::vector<GF2Equation>& rows, int unknowns) {
  std::vector<GF2Equation> work = rows;
  std::size_t next = 0;
  for (int col = 0; col <= unknowns; ++col) {
    const auto has = [&](const GF2Equation& e) {
      return col < unknowns ? bool(e.coeffs & (GF2Word{1} << col)) : e.rhs;
    };
    std::size_t pivot = next;
    while (pivot < work.size() && !has(work[pivot])) ++pivot;
    if (pivot == work.size()) continue;
    std::swap(work[pivot], work[next]);
    for (std::size_t r = 0; r < work.size(); ++r)
      if (r != next && has(work[r])) {
        work[r].coeffs ^= work[next].coeffs;
        work[r].rhs = work[r].rhs != work[next].rhs;
      }
    ++next;
  }
  work.resize(next);
  return work;
}

}  // namespace flatpin

#endif  // FLATPIN_GF2_HPP
