#ifndef FLATPIN_PINSPIN_HPP
#define FLATPIN_PINSPIN_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatpin/bieberbach.hpp"
#include "flatpin/clifford.hpp"
#include "flatpin/error.hpp"
#include "flatpin/gf2.hpp"

namespace flatpin {

/// Which structure is sought. Spin is computed in Cl+ and needs orientability.
enum class StructureKind { PinPlus, PinMinus, Spin };

inline std::string_view to_string(StructureKind k) {
  switch (k) {
    case StructureKind::PinPlus: return "pin+";
    case StructureKind::PinMinus: return "pin-";
    case StructureKind::Spin: return "spin";
  }
  return "?";
}

inline Convention clifford_convention(StructureKind k) {
  return k == StructureKind::PinMinus ? Convention::Minus : Convention::Plus;
}

/// Where a constraint row came from.
struct RowOrigin {
  enum class Kind {
    Lattice,  // chi((B_g - Id) e_axis) = 1
    Square,   // chi(w_S^2) = (u(B_{i1}) ... u(B_{ir}))^2
  };
  Kind kind;
  int generator = -1;
  int axis = -1;
  WordMask word = 0;
};

struct ConstraintRow {
  GF2Equation equation;
  RowOrigin origin;
};

/// Linear system over GF(2) in the unknowns x_i = (1 - delta_i) / 2.
struct GF2System {
  int dim = 0;
  int generators = 0;
  StructureKind kind = StructureKind::PinPlus;
  std::vector<ConstraintRow> rows;

  std::vector<GF2Equation> equations() const {
    std::vector<GF2Equation> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.equation);
    return out;
  }
};

/// Signs attached to the distinguished preimages u(B_i) of the generators.
/// Counts never depend on them; they exist so that this can be tested.
using PreimageSigns = std::vector<int>;

namespace detail {

inline void require_kind(const BieberbachGroup& g, StructureKind kind) {
  if (kind == StructureKind::Spin && !g.is_orientable())
    throw Error(ErrorKind::NotOrientable, "spin structures need an orientable group");
}

inline GF2Word parity_mask(const LatticeVector& v) {
  GF2Word m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] % 2 != 0) m |= GF2Word{1} << i;
  return m;
}

}  // namespace detail

/// Product u(B_{i1}) ... u(B_{ir}) of signed distinguished preimages.
inline CliffordElement word_preimage(const BieberbachGroup& g, WordMask s, Convention c,
                                     const PreimageSigns& signs = {}) {
  CliffordElement out = CliffordElement::one(g.dim(), c);
  for (int i = 0; i < g.rank(); ++i) {
    if (!(s & (WordMask{1} << i))) continue;
    CliffordElement u = u_pre(g.generators()[i].rotation, c);
    if (!signs.empty() && signs.at(i) < 0) u = -u;
    out = out * u;
  }
  return out;
}

/// Constraints on the lattice character: one row per (generator, axis) from
/// invariance under B_g, then one row per nonempty tail-free word w_S fixing
/// chi(w_S^2) to the Clifford square of its preimage.
inline GF2System assemble(const BieberbachGroup& g, StructureKind kind, const PreimageSigns& signs = {}) {
  detail::require_kind(g, kind);
  if (!signs.empty() && static_cast<int>(signs.size()) != g.rank())
    throw Error(ErrorKind::InvalidParameters, "one preimage sign per generator");
  const Convention c = clifford_convention(kind);
  GF2System sys{g.dim(), g.rank(), kind, {}};
  for (int gi = 0; gi < g.rank(); ++gi) {
    const auto& b = g.generators()[gi].rotation;
    for (int axis = 0; axis < g.dim(); ++axis) {
      LatticeVector e(g.dim(), 0);
      e[axis] = 1;
      LatticeVector moved = b.apply(e);
      moved[axis] -= 1;
      sys.rows.push_back({{detail::parity_mask(moved), false}, {RowOrigin::Kind::Lattice, gi, axis, 0}});
    }
  }
  for (WordMask s = 1; s < g.word_count(); ++s) {
    const CliffordElement u = word_preimage(g, s, c, signs);
    const int square = (u * u).unit_sign();
    if (square == 0) throw Error(ErrorKind::NotPinElement, "square of a preimage is not +-1");
    sys.rows.push_back({{detail::parity_mask(g.word_square(s)), square < 0}, {RowOrigin::Kind::Square, -1, -1, s}});
  }
  return sys;
}

/// Either no structure, or 2^exponent of them with exponent = n - rank + k.
struct StructureCount {
  bool exists = false;
  int rank = 0;
  int exponent = 0;

  /// Exact count when it fits 64 bits.
  std::optional<std::uint64_t> total() const {
    if (!exists) return 0;
    if (exponent >= 64) return std::nullopt;
    return std::uint64_t{1} << exponent;
  }

  friend bool operator==(const StructureCount&, const StructureCount&) = default;
};

struct StructureSolution {
  StructureCount count;
  GF2Result reduced;
};

inline StructureSolution solve(const GF2System& sys) {
  StructureSolution out;
  out.reduced = gf2_solve(sys.equations(), sys.dim);
  out.count.rank = out.reduced.rank;
  out.count.exists = out.reduced.consistent;
  out.count.exponent = out.reduced.consistent ? sys.dim - out.reduced.rank + sys.generators : 0;
  return out;
}

inline StructureCount count_structures(const BieberbachGroup& g, StructureKind kind) {
  return solve(assemble(g, kind)).count;
}

/// Homomorphism Gamma -> Pin: delta_i = epsilon(L_{e_i}), sigma_i from
/// epsilon(gamma_i) = sigma_i u(B_i).
struct PinStructure {
  StructureKind kind = StructureKind::PinPlus;
  std::vector<int> delta;
  std::vector<int> sigma;

  friend bool operator==(const PinStructure&, const PinStructure&) = default;
};

inline GF2Word delta_bits(const std::vector<int>& delta) {
  GF2Word x = 0;
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] < 0) x |= GF2Word{1} << i;
  return x;
}

inline std::vector<int> delta_from_bits(GF2Word x, int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = (x >> i) & 1U ? -1 : 1;
  return out;
}

/// Every lattice character solving the system, in binary-counter order over
/// the nullspace basis.
inline std::vector<GF2Word> solution_characters(const StructureSolution& sol) {
  std::vector<GF2Word> out;
  if (!sol.count.exists) return out;
  const std::size_t dims = sol.reduced.nullspace.size();
  if (dims >= 40) throw Error(ErrorKind::TooMany, "solution space too large to list");
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << dims); ++c) {
    GF2Word x = sol.reduced.particular;
    for (std::size_t b = 0; b < dims; ++b)
      if ((c >> b) & 1U) x ^= sol.reduced.nullspace[b];
    out.push_back(x);
  }
  return out;
}

/// All structures; delta varies slowest, sigma is a binary counter with
/// bit i set <-> sigma_{i+1} = -1.
inline std::vector<PinStructure> enumerate(const BieberbachGroup& g, StructureKind kind, std::uint64_t limit) {
  const StructureSolution sol = solve(assemble(g, kind));
  if (!sol.count.exists) return {};
  const auto total = sol.count.total();
  if (!total || *total > limit)
    throw Error(ErrorKind::TooMany, "2^" + std::to_string(sol.count.exponent) + " structures exceed the limit");
  std::vector<PinStructure> out;
  out.reserve(*total);
  for (GF2Word x : solution_characters(sol)) {
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << g.rank()); ++s) {
      PinStructure p{kind, delta_from_bits(x, g.dim()), std::vector<int>(g.rank())};
      for (int i = 0; i < g.rank(); ++i) p.sigma[i] = (s >> i) & 1U ? -1 : 1;
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// epsilon(gamma_{i1} ... gamma_{ir} L_lambda)
///   = sigma_{i1} ... sigma_{ir} * prod_{lambda_j odd} delta_j * u(B_{i1}) ... u(B_{ir}).
inline CliffordElement evaluate(const PinStructure& p, const BieberbachGroup& g, const ReducedWord& w) {
  int scalar = 1;
  for (int i = 0; i < g.rank(); ++i)
    if (w.generators & (WordMask{1} << i)) scalar *= p.sigma.at(i);
  for (int j = 0; j < g.dim(); ++j)
    if (w.tail.at(j) % 2 != 0) scalar *= p.delta.at(j);
  const CliffordElement u = word_preimage(g, w.generators, clifford_convention(p.kind));
  return scalar > 0 ? u : -u;
}

/// Does the structure satisfy every row of the system?
inline bool satisfies(const PinStructure& p, const GF2System& sys) {
  const GF2Word x = delta_bits(p.delta);
  for (const auto& r : sys.rows)
    if ((std::popcount(r.equation.coeffs & x) % 2 == 1) != r.equation.rhs) return false;
  return true;
}

struct HomomorphismCheck {
  bool passed = true;
  bool exhaustive = true;  // false when the right-hand factors were cut down to generators
  std::uint64_t pairs = 0;
};

/// Checks epsilon(w w') = epsilon(w) epsilon(w') for each structure over
/// words w = w_S L_lambda with lambda in the box [-radius, radius]^n.
///
/// When |W|^2 exceeds pair_budget the right factor w' is restricted to
/// w_S L_mu with mu in {0, e_1, ..., e_n}, which still covers a generating set.
inline std::vector<HomomorphismCheck> homomorphism_check(const std::vector<PinStructure>& structures,
                                                         const BieberbachGroup& g, int radius,
                                                         std::uint64_t pair_budget = 4'000'000) {
  std::vector<HomomorphismCheck> out(structures.size());
  if (structures.empty()) return out;
  const int n = g.dim();
  const StructureKind kind = structures.front().kind;
  const Convention conv = clifford_convention(kind);
  for (const auto& p : structures)
    if (p.kind != kind) throw Error(ErrorKind::InvalidParameters, "structures must share one kind");

  // Clifford side, computed once: U_S U_S' = sign(S, S') U_{S xor S'}.
  const WordMask words = g.word_count();
  std::vector<CliffordElement> pre;
  for (WordMask s = 0; s < words; ++s) pre.push_back(word_preimage(g, s, conv));
  std::vector<int> table(static_cast<std::size_t>(words) * words, 0);
  for (WordMask a = 0; a < words; ++a)
    for (WordMask b = 0; b < words; ++b) {
      const CliffordElement prod = pre[a] * pre[b];
      const CliffordElement& target = pre[a ^ b];
      table[a * words + b] = prod == target ? 1 : (prod == -target ? -1 : 0);
    }

  std::uint64_t box_size = 1;
  for (int i = 0; i < n; ++i) {
    box_size *= static_cast<std::uint64_t>(2 * radius + 1);
    if (box_size * words > pair_budget)
      throw Error(ErrorKind::BudgetExceeded, "lattice box does not fit the pair budget");
  }
  std::vector<LatticeVector> box;
  {
    LatticeVector v(n, -radius);
    for (;;) {
      box.push_back(v);
      int i = 0;
      while (i < n && v[i] == radius) v[i++] = -radius;
      if (i == n) break;
      ++v[i];
    }
  }
  std::vector<LatticeVector> right_tails = box;
  bool exhaustive = true;
  const std::uint64_t left_count = static_cast<std::uint64_t>(box.size()) * words;
  if (left_count * left_count > pair_budget) {
    exhaustive = false;
    right_tails.assign(1, LatticeVector(n, 0));
    for (int i = 0; i < n; ++i) {
      LatticeVector e(n, 0);
      e[i] = 1;
      right_tails.push_back(e);
    }
  }

  // Tail-free products W_a W_b = W_{a xor b} L_c, from the group's own reduction.
  std::vector<LatticeVector> base_tail(static_cast<std::size_t>(words) * words);
  for (WordMask a = 0; a < words; ++a)
    for (WordMask b = 0; b < words; ++b) {
      const ReducedWord r = g.multiply({a, LatticeVector(n, 0)}, {b, LatticeVector(n, 0)});
      if (r.generators != (a ^ b)) throw Error(ErrorKind::InvalidGroup, "word product left the holonomy class");
      base_tail[a * words + b] = r.tail;
    }
  std::vector<SignedPermutation> inverse_rotation;
  for (WordMask s = 0; s < words; ++s) inverse_rotation.push_back(g.word_rotation(s).inverse());

  // Each pair imposes chi(p1 + p2 + p3) = clifford sign, where p are tail parities
  // (the sigma factors cancel because S3 = S1 xor S2). Distinct constraints are
  // collected first and checked against every structure afterwards.
  std::set<std::pair<GF2Word, int>> constraints;
  std::uint64_t pairs = 0;
  LatticeVector tail(n);
  for (WordMask s1 = 0; s1 < words; ++s1)
    for (const auto& t1 : box)
      for (WordMask s2 = 0; s2 < words; ++s2) {
        // W_{s1} L_{t1} W_{s2} L_{t2} = W_{s1} W_{s2} L_{B_{s2}^{-1} t1 + t2}
        const LatticeVector moved = add(base_tail[s1 * words + s2], inverse_rotation[s2].apply(t1));
        const GF2Word p1 = detail::parity_mask(t1);
        const int clifford = table[s1 * words + s2];
        for (const auto& t2 : right_tails) {
          for (int i = 0; i < n; ++i) tail[i] = moved[i] + t2[i];
          const GF2Word p2 = detail::parity_mask(t2), p3 = detail::parity_mask(tail);
          constraints.emplace(p1 ^ p2 ^ p3, clifford);
          ++pairs;
        }
      }

  for (std::size_t i = 0; i < structures.size(); ++i) {
    const GF2Word chi = delta_bits(structures[i].delta);
    if (static_cast<int>(structures[i].sigma.size()) != g.rank())
      throw Error(ErrorKind::InvalidParameters, "one sigma per generator");
    for (const auto& [mask, clifford] : constraints) {
      const int sign = std::popcount(chi & mask) % 2 ? -1 : 1;
      if (clifford == 0 || sign != clifford) {
        out[i].passed = false;
        break;
      }
    }
  }
  for (auto& r : out) {
    r.pairs = pairs;
    r.exhaustive = exhaustive;
  }
  return out;
}

inline HomomorphismCheck homomorphism_check(const PinStructure& p, const BieberbachGroup& g, int radius,
                                            std::uint64_t pair_budget = 4'000'000) {
  return homomorphism_check(std::vector<PinStructure>{p}, g, radius, pair_budget).front();
}

/// Certificate that no structure exists.
struct NonexistenceWitness {
  /// Two tail-free words with equal squares but opposite Clifford squares.
  struct SquareClash {
    WordMask first;
    WordMask second;
    LatticeVector square;
    int first_sign;
    int second_sign;
  };
  std::optional<SquareClash> clash;
  /// Rows of the assembled system that sum to 0 = 1.
  std::vector<ConstraintRow> certificate;
};

inline NonexistenceWitness nonexistence_witness(const BieberbachGroup& g, StructureKind kind) {
  const GF2System sys = assemble(g, kind);
  const GF2Result res = gf2_solve(sys.equations(), sys.dim);
  if (res.consistent) throw Error(ErrorKind::StructuresExist, "the constraint system is consistent");
  NonexistenceWitness out;
  for (std::size_t idx : res.certificate) out.certificate.push_back(sys.rows[idx]);

  std::vector<const ConstraintRow*> squares;
  for (const auto& r : sys.rows)
    if (r.origin.kind == RowOrigin::Kind::Square) squares.push_back(&r);
  for (std::size_t a = 0; a < squares.size() && !out.clash; ++a)
    for (std::size_t b = a + 1; b < squares.size(); ++b) {
      const auto sa = g.word_square(squares[a]->origin.word);
      if (sa != g.word_square(squares[b]->origin.word)) continue;
      if (squares[a]->equation.rhs == squares[b]->equation.rhs) continue;
      out.clash = NonexistenceWitness::SquareClash{squares[a]->origin.word, squares[b]->origin.word, sa,
                                                    squares[a]->equation.rhs ? -1 : 1,
                                                    squares[b]->equation.rhs ? -1 : 1};
      break;
    }
  return out;
}

/// Closed-form description of the structures on Gamma_{j,h}, n = 2j + h + l.
struct Z2ClosedForm {
  int dim = 0;
  int exponent = 0;                          // 2^{n-j} structures
  std::vector<std::pair<int, int>> equal;    // delta_p = delta_q (0-based)
  int last_delta = 1;                        // delta_n
};

inline Z2ClosedForm z2_closed_form(int j, int h, int l, StructureKind kind) {
  if (j < 0 || h < 0 || l < 1 || j + h < 1)
    throw Error(ErrorKind::InvalidParameters, "need j, h >= 0, j + h >= 1 and l >= 1");
  if (kind == StructureKind::Spin && (j + h) % 2 != 0)
    throw Error(ErrorKind::NotOrientable, "Gamma_{j,h} is orientable only for even j + h");
  Z2ClosedForm out;
  out.dim = 2 * j + h + l;
  out.exponent = out.dim - j;
  for (int i = 0; i < j; ++i) out.equal.emplace_back(2 * i, 2 * i + 1);
  if (kind == StructureKind::Spin) out.last_delta = ((j + h) / 2) % 2 ? -1 : 1;
  else out.last_delta = u_square_formula(j, h, clifford_convention(kind));
  return out;
}

/// Reduced constraints as text, e.g. "d2 = -d1", "d3 = -1"; free unknowns are
/// the ones never on a left-hand side.
inline std::vector<std::string> describe_constraints(const GF2Result& r) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < r.reduced.size(); ++i) {
    const int p = r.pivot_columns[i];
    std::string rhs;
    for (int f = 0; f < r.unknowns; ++f)
      if (f != p && (r.reduced[i].coeffs & (GF2Word{1} << f))) rhs += (rhs.empty() ? "" : "*") + ("d" + std::to_string(f + 1));
    const bool neg = r.reduced[i].rhs;
    if (rhs.empty()) rhs = neg ? "-1" : "1";
    else if (neg) rhs = "-" + rhs;
    out.push_back("d" + std::to_string(p + 1) + " = " + rhs);
  }
  return out;
}

}  // namespace flatpin

#endif  // FLATPIN_PINSPIN_HPP
