#ifndef FLATPIN_BIEBERBACH_HPP
#define FLATPIN_BIEBERBACH_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flatpin/dyadic.hpp"
#include "flatpin/error.hpp"
#include "flatpin/integer_matrix.hpp"
#include "flatpin/signed_permutation.hpp"

namespace flatpin {

/// Isometry gamma = B L_b of R^n, acting as x -> B(x + b).
///
/// Composition as maps: (B L_b)(B' L_b') = B B' L_{B'^{-1} b + b'}. With this
/// order gamma^2 = L_{(B + Id) b} for involutive B, and the product of two
/// generators has translation b3 = B2 b1 + b2.
struct AffineElement {
  SignedPermutation rotation;
  DyadicVector translation;

  static AffineElement identity(int n) { return {SignedPermutation::identity(n), DyadicVector(n)}; }
  static AffineElement lattice_translation(const LatticeVector& v) {
    return {SignedPermutation::identity(static_cast<int>(v.size())), to_dyadic(v)};
  }

  int dim() const noexcept { return rotation.dim(); }

  friend AffineElement operator*(const AffineElement& x, const AffineElement& y) {
    return {x.rotation * y.rotation, add(y.rotation.inverse().apply(x.translation), y.translation)};
  }

  AffineElement inverse() const {
    // (B L_b)^{-1} = L_{-b} B^{-1} = B^{-1} L_{-B b}
    DyadicVector moved = rotation.apply(translation);
    for (auto& x : moved) x = -x;
    return {rotation.inverse(), std::move(moved)};
  }

  /// Image of a point.
  DyadicVector apply(const DyadicVector& x) const { return rotation.apply(add(x, translation)); }

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

/// One violated group condition.
struct ValidationIssue {
  ErrorKind kind;
  std::string message;
};

/// Thrown by BieberbachGroup::validate; lists every violated condition. kind()
/// is the kind of the first issue.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues)
      : Error(issues.front().kind, join(issues)), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<ValidationIssue>& issues) {
    std::string out;
    for (std::size_t i = 0; i < issues.size(); ++i) {
      // Error's own prefix names the first kind.
      if (i) out += "; " + std::string(to_string(issues[i].kind)) + ": ";
      out += issues[i].message;
    }
    return out;
  }

  std::vector<ValidationIssue> issues_;
};

/// Subset of generator indices, bit i <-> gamma_{i+1}.
using WordMask = std::uint32_t;

inline constexpr int kMaxGenerators = 16;

/// Canonical element gamma_{i1} ... gamma_{ir} L_tail with i1 < ... < ir.
struct ReducedWord {
  WordMask generators = 0;
  LatticeVector tail;

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

/// Letter of an unreduced word: a generator index (0-based) or a lattice translation.
using WordToken = std::variant<int, LatticeVector>;

struct HolonomyRep {
  WordMask generators;
  SignedPermutation rotation;
  DyadicVector translation;  // reduced mod Z^n into [0, 1)^n
};

inline std::string mask_str(WordMask mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (mask & (WordMask{1} << i)) {
      out += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

inline std::string vector_str(const LatticeVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

inline std::string vector_str(const DyadicVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + ")";
}

/// Bieberbach group <gamma_1, ..., gamma_k, Z^n> with holonomy Z_2^k and
/// signed-permutation rotation parts. Instances only exist validated.
class BieberbachGroup {
 public:
  static BieberbachGroup validate(int n, std::vector<AffineElement> generators);

  /// The n-torus Z^n \ R^n.
  static BieberbachGroup torus(int n) { return validate(n, {}); }

  int dim() const noexcept { return n_; }
  int rank() const noexcept { return static_cast<int>(generators_.size()); }
  const std::vector<AffineElement>& generators() const noexcept { return generators_; }
  WordMask word_count() const noexcept { return WordMask{1} << rank(); }

  /// B_S for the word gamma_{i1} ... gamma_{ir}.
  const SignedPermutation& word_rotation(WordMask s) const { return words_.at(s).rotation; }
  /// gamma_{i1} ... gamma_{ir} with its exact, unreduced translation.
  const AffineElement& word_element(WordMask s) const { return words_.at(s); }

  /// gamma_i^2 = L_{square(i)}.
  const LatticeVector& generator_square(int i) const { return squares_.at(i); }

  /// For i > j: gamma_i gamma_j = gamma_j gamma_i L_{commutator(i, j)}.
  const LatticeVector& commutator(int i, int j) const { return commutators_.at(i).at(j); }

  ReducedWord reduce(const std::vector<WordToken>& word) const;
  ReducedWord multiply(const ReducedWord& x, const ReducedWord& y) const;

  /// lambda with (gamma_{i1} ... gamma_{ir})^2 = L_lambda.
  LatticeVector word_square(WordMask s) const;

  std::vector<HolonomyRep> holonomy_reps() const;

  AffineElement element(const ReducedWord& w) const {
    return words_.at(w.generators) * AffineElement::lattice_translation(w.tail);
  }

  bool is_orientable() const {
    for (const auto& g : generators_)
      if (g.rotation.determinant() != 1) return false;
    return true;
  }

  bool is_diagonal_type() const {
    for (const auto& g : generators_) {
      if (!g.rotation.is_diagonal()) return false;
      for (const auto& x : g.translation)
        if (x.exponent() > 1) return false;
    }
    return true;
  }

  friend bool operator==(const BieberbachGroup& a, const BieberbachGroup& b) {
    return a.n_ == b.n_ && a.generators_ == b.generators_;
  }

 private:
  BieberbachGroup() = default;

  ReducedWord append_generator(const ReducedWord& x, int j) const;

  int n_ = 0;
  std::vector<AffineElement> generators_;
  std::vector<LatticeVector> squares_;
  std::vector<std::vector<LatticeVector>> commutators_;
  std::vector<AffineElement> words_;
};

/// Integer matrix of B + Id.
inline IntMatrix plus_identity(const SignedPermutation& b) {
  IntMatrix m(b.dim(), b.dim());
  for (int c = 0; c < b.dim(); ++c) {
    m(b.image(c), c) += b.sign(c);
    m(c, c) += 1;
  }
  return m;
}

inline BieberbachGroup BieberbachGroup::validate(int n, std::vector<AffineElement> generators) {
  if (n < 1 || n > 64) throw ValidationError({{ErrorKind::InvalidGroup, "dimension must lie in [1, 64]"}});
  const int k = static_cast<int>(generators.size());
  if (k > kMaxGenerators)
    throw ValidationError({{ErrorKind::InvalidGroup, "at most 16 generators are supported"}});
  std::vector<ValidationIssue> issues;
  const auto gen_name = [](int i) { return "gamma_" + std::to_string(i + 1); };

  for (int i = 0; i < k; ++i) {
    if (generators[i].rotation.dim() != n || static_cast<int>(generators[i].translation.size()) != n)
      throw ValidationError({{ErrorKind::DimensionMismatch, gen_name(i) + " does not have dimension " + std::to_string(n)}});
  }

  bool structural = true;
  for (int i = 0; i < k; ++i)
    if (!generators[i].rotation.is_involution()) {
      issues.push_back({ErrorKind::NotInvolution, gen_name(i) + ": B^2 != Id"});
      structural = false;
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (generators[i].rotation * generators[j].rotation != generators[j].rotation * generators[i].rotation) {
        issues.push_back({ErrorKind::NonCommuting, gen_name(i) + " and " + gen_name(j) + " have non-commuting rotations"});
        structural = false;
      }

  BieberbachGroup g;
  g.n_ = n;
  g.generators_ = std::move(generators);
  const auto& gens = g.generators_;

  // Words gamma_{i1} ... gamma_{ir} composed in ascending order.
  g.words_.assign(std::size_t{1} << k, AffineElement::identity(n));
  for (WordMask s = 1; s < (WordMask{1} << k); ++s) {
    const int last = 31 - std::countl_zero(s);
    g.words_[s] = g.words_[s & ~(WordMask{1} << last)] * gens[last];
  }

  if (structural) {
    std::map<SignedPermutation, WordMask> seen;
    for (WordMask s = 0; s < g.words_.size(); ++s) {
      auto [it, inserted] = seen.emplace(g.words_[s].rotation, s);
      if (!inserted)
        issues.push_back({ErrorKind::HolonomyCollapse, "words " + mask_str(it->second) + " and " + mask_str(s) +
                                                           " share the rotation " + g.words_[s].rotation.str()});
    }
  }

  bool integral = true;
  g.squares_.resize(k);
  for (int i = 0; i < k; ++i) {
    const DyadicVector sq = (gens[i] * gens[i]).translation;
    if (!is_integral(sq)) {
      issues.push_back({ErrorKind::NonIntegralSquare, gen_name(i) + "^2 = L" + vector_str(sq) + " is not a lattice translation"});
      integral = false;
    } else {
      g.squares_[i] = to_lattice(sq);
    }
  }
  g.commutators_.assign(k, std::vector<LatticeVector>(k));
  if (structural) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < i; ++j) {
        // kappa = translation of gamma_i gamma_j minus that of gamma_j gamma_i
        const DyadicVector kappa = subtract((gens[i] * gens[j]).translation, (gens[j] * gens[i]).translation);
        if (!is_integral(kappa)) {
          issues.push_back({ErrorKind::NonIntegralCommutator,
                            "[" + gen_name(i) + ", " + gen_name(j) + "] = L" + vector_str(kappa) + " is not a lattice translation"});
          integral = false;
        } else {
          g.commutators_[i][j] = to_lattice(kappa);
        }
      }
  }

  if (structural && integral && issues.empty()) {
    // B(x + b + lambda) = x is solvable iff (B + Id)(b + lambda) = 0.
    for (WordMask s = 1; s < g.words_.size(); ++s) {
      const auto& w = g.words_[s];
      const IntMatrix plus = plus_identity(w.rotation);
      DyadicVector target(n);
      for (int r = 0; r < n; ++r) {
        Dyadic acc;
        for (int c = 0; c < n; ++c)
          if (plus(r, c)) acc += Dyadic(plus(r, c)) * w.translation[c];
        target[r] = -acc;
      }
      if (auto lambda = solve_integer_system(plus, target)) {
        DyadicVector fixed = add(w.translation, to_dyadic(*lambda));
        for (auto& x : fixed) x = -(x * Dyadic::half());
        issues.push_back({ErrorKind::Torsion, "word " + mask_str(s) + " L" + vector_str(*lambda) +
                                                  " fixes the point " + vector_str(fixed)});
      }
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
  return g;
}

inline ReducedWord BieberbachGroup::append_generator(const ReducedWord& x, int j) const {
  // x = P L_t with P sorted; P L_t gamma_j = P gamma_j L_{B_j t}.
  const auto& bj = generators_[j].rotation;
  const LatticeVector moved = bj.apply(x.tail);
  const WordMask bit = WordMask{1} << j;
  if (x.generators == 0) return {bit, moved};
  const int last = 31 - std::countl_zero(x.generators);
  const WordMask prefix = x.generators & ~(WordMask{1} << last);
  if (last < j) return {x.generators | bit, moved};
  if (last == j) return {prefix, add(squares_[j], moved)};
  // P' gamma_last gamma_j = P' gamma_j gamma_last L_kappa
  const ReducedWord inner = append_generator({prefix, LatticeVector(n_, 0)}, j);
  const auto& blast = generators_[last].rotation;
  const LatticeVector tail = add(blast.apply(inner.tail), commutators_[last][j]);
  return {inner.generators | (WordMask{1} << last), add(tail, moved)};
}

inline ReducedWord BieberbachGroup::reduce(const std::vector<WordToken>& word) const {
  ReducedWord out{0, LatticeVector(n_, 0)};
  for (const auto& token : word) {
    if (const int* j = std::get_if<int>(&token)) {
      if (*j < 0 || *j >= rank()) throw Error(ErrorKind::InvalidParameters, "generator index out of range");
      out = append_generator(out, *j);
    } else {
      const auto& v = std::get<LatticeVector>(token);
      if (static_cast<int>(v.size()) != n_) throw Error(ErrorKind::DimensionMismatch, "lattice vector size");
      out.tail = add(out.tail, v);
    }
  }
  return out;
}

inline ReducedWord BieberbachGroup::multiply(const ReducedWord& x, const ReducedWord& y) const {
  std::vector<WordToken> word;
  for (int i = 0; i < rank(); ++i)
    if (x.generators & (WordMask{1} << i)) word.emplace_back(i);
  word.emplace_back(x.tail);
  for (int i = 0; i < rank(); ++i)
    if (y.generators & (WordMask{1} << i)) word.emplace_back(i);
  word.emplace_back(y.tail);
  return reduce(word);
}

inline LatticeVector BieberbachGroup::word_square(WordMask s) const {
  std::vector<WordToken> word;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < rank(); ++i)
      if (s & (WordMask{1} << i)) word.emplace_back(i);
  const ReducedWord r = reduce(word);
  return r.tail;
}

inline std::vector<HolonomyRep> BieberbachGroup::holonomy_reps() const {
  std::vector<HolonomyRep> out;
  out.reserve(words_.size());
  for (WordMask s = 0; s < words_.size(); ++s)
    out.push_back({s, words_[s].rotation, reduce_mod_lattice(words_[s].translation)});
  return out;
}

/// Cycle type (j, h) of a holonomy rotation.
struct CycleType {
  int j;
  int h;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

inline CycleType cycle_type(const SignedPermutation& b) {
  const auto c = involution_cycles(b);
  return {c.j(), c.h()};
}

/// Block doubling d(B L_b) = diag(B, B) L_{(b, b)}.
inline BieberbachGroup double_group(const BieberbachGroup& g) {
  std::vector<AffineElement> gens;
  for (const auto& x : g.generators()) {
    DyadicVector b = x.translation;
    b.insert(b.end(), x.translation.begin(), x.translation.end());
    gens.push_back({direct_sum(x.rotation, x.rotation), std::move(b)});
  }
  return BieberbachGroup::validate(2 * g.dim(), std::move(gens));
}

/// Conjugate C Gamma C^{-1} by a signed permutation C: (B, b) -> (C B C^{-1}, C b).
inline BieberbachGroup conjugate(const BieberbachGroup& g, const SignedPermutation& c) {
  std::vector<AffineElement> gens;
  const auto cinv = c.inverse();
  for (const auto& x : g.generators()) gens.push_back({c * x.rotation * cinv, c.apply(x.translation)});
  return BieberbachGroup::validate(g.dim(), std::move(gens));
}

}  // namespace flatpin

#endif  // FLATPIN_BIEBERBACH_HPP
