#ifndef FLATPIN_INVARIANTS_HPP
#define FLATPIN_INVARIANTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flatpin/bieberbach.hpp"
#include "flatpin/dyadic.hpp"
#include "flatpin/error.hpp"
#include "flatpin/integer_matrix.hpp"

namespace flatpin {

/// c_{d,t}: number of holonomy representatives with d fixed axes, t of which
/// carry translation coordinate 1/2.
using SunadaProfile = std::map<std::pair<int, int>, int>;

inline SunadaProfile sunada_profile(const BieberbachGroup& g) {
  if (!g.is_diagonal_type()) throw Error(ErrorKind::NotDiagonalType, "Sunada numbers need a diagonal-type group");
  SunadaProfile out;
  for (const auto& rep : g.holonomy_reps()) {
    int d = 0, t = 0;
    for (int i = 0; i < g.dim(); ++i) {
      if (rep.rotation.image(i) != i || rep.rotation.sign(i) != 1) continue;
      ++d;
      if (rep.translation[i] == Dyadic::half()) ++t;
    }
    ++out[{d, t}];
  }
  return out;
}

/// Equal Sunada numbers; for diagonal type this certifies isospectrality on p-forms for all p.
inline bool isospectral_diagonal(const BieberbachGroup& a, const BieberbachGroup& b) {
  auto pa = sunada_profile(a);
  auto pb = sunada_profile(b);
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "groups of different dimension");
  return pa == pb;
}

/// Coefficients of det(Id + t B), index = power of t.
inline std::vector<std::int64_t> det_one_plus_t(const SignedPermutation& b) {
  std::vector<std::int64_t> poly{1};
  std::vector<bool> seen(b.dim(), false);
  for (int i = 0; i < b.dim(); ++i) {
    if (seen[i]) continue;
    int len = 0, sign = 1;
    for (int j = i; !seen[j]; j = b.image(j)) {
      seen[j] = true;
      sign *= b.sign(j);
      ++len;
    }
    // A signed m-cycle with sign product s contributes 1 - s (-t)^m.
    std::vector<std::int64_t> factor(len + 1, 0);
    factor[0] = 1;
    factor[len] = -sign * (len % 2 ? -1 : 1);
    std::vector<std::int64_t> next(poly.size() + len, 0);
    for (std::size_t a = 0; a < poly.size(); ++a)
      for (std::size_t c = 0; c <= static_cast<std::size_t>(len); ++c)
        next[a + c] = detail::checked_add(next[a + c], detail::checked_mul(poly[a], factor[c]));
    poly = std::move(next);
  }
  return poly;
}

/// beta_p = average over the holonomy of tr(Lambda^p B).
inline std::int64_t betti(const BieberbachGroup& g, int p) {
  if (p < 0 || p > g.dim()) throw Error(ErrorKind::InvalidParameters, "degree out of range");
  std::int64_t sum = 0;
  for (WordMask s = 0; s < g.word_count(); ++s) sum = detail::checked_add(sum, det_one_plus_t(g.word_rotation(s))[p]);
  const auto order = static_cast<std::int64_t>(g.word_count());
  if (sum % order != 0) throw Error(ErrorKind::InvalidGroup, "trace average is not an integer");
  return sum / order;
}

inline std::vector<std::int64_t> betti_numbers(const BieberbachGroup& g) {
  std::vector<std::int64_t> out;
  for (int p = 0; p <= g.dim(); ++p) out.push_back(betti(g, p));
  return out;
}

inline std::int64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// sum_{i=0}^{[p/2]} C(j+h, 2i) C(j+l, p-2i) for Gamma_{j,h}.
inline std::int64_t betti_closed_form_z2(int j, int h, int l, int p) {
  if (j < 0 || h < 0 || l < 1 || j + h < 1) throw Error(ErrorKind::InvalidParameters, "need j, h >= 0, j + h >= 1, l >= 1");
  std::int64_t sum = 0;
  for (int i = 0; 2 * i <= p; ++i) sum += binomial(j + h, 2 * i) * binomial(j + l, p - 2 * i);
  return sum;
}

struct HomologyResult {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, each dividing the next

  friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

/// Relation matrix of the abelianization on x_1..x_n (lattice) and y_1..y_k (generators).
inline IntMatrix abelianization_relations(const BieberbachGroup& g) {
  const int n = g.dim(), k = g.rank();
  IntMatrix rel(0, n + k);
  for (int i = 0; i < k; ++i) {
    const auto& b = g.generators()[i].rotation;
    for (int j = 0; j < n; ++j) {
      std::vector<std::int64_t> row(n + k, 0);
      row[b.image(j)] += b.sign(j);
      row[j] -= 1;
      rel.append_row(row);
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j) {
      std::vector<std::int64_t> row(n + k, 0);
      const auto& kappa = g.commutator(i, j);
      for (int a = 0; a < n; ++a) row[a] = kappa[a];
      rel.append_row(row);
    }
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> row(n + k, 0);
    const auto& sq = g.generator_square(i);
    for (int a = 0; a < n; ++a) row[a] = -sq[a];
    row[n + i] = 2;
    rel.append_row(row);
  }
  return rel;
}

/// H_1(M_Gamma, Z) = Gamma / [Gamma, Gamma].
inline HomologyResult homology_h1(const BieberbachGroup& g) {
  const IntMatrix rel = abelianization_relations(g);
  HomologyResult out;
  if (rel.rows() == 0) {
    out.free_rank = rel.cols();
    return out;
  }
  const SmithForm snf = smith_normal_form(rel);
  out.free_rank = rel.cols() - snf.rank;
  for (auto f : snf.factors)
    if (f > 1) out.torsion.push_back(f);
  return out;
}

/// Squared length of the shortest closed geodesic: the minimum over
/// nontrivial elements w_S L_lambda, |lambda_i| <= box_radius, of the squared
/// norm of the projection of b_S + lambda onto the fixed space of B_S, and
/// over nonzero lattice vectors in the box.
///
/// The projected norm splits over the cycles of B_S (fixed axis: c_i^2,
/// 2-cycle: (c_p + s c_q)^2 / 2, flipped axis: 0), so each block is minimized
/// over its own coordinates; this equals the minimum over the whole box.
inline Dyadic shortest_geodesic_sq(const BieberbachGroup& g, int box_radius) {
  if (box_radius < 1) throw Error(ErrorKind::InvalidParameters, "box radius must be at least 1");
  std::optional<Dyadic> best = Dyadic(1);  // shortest nonzero vector of Z^n
  for (WordMask s = 1; s < g.word_count(); ++s) {
    const auto& w = g.word_element(s);
    const auto cyc = involution_cycles(w.rotation);
    Dyadic total;
    for (int i : cyc.fixed) {
      std::optional<Dyadic> m;
      for (int l = -box_radius; l <= box_radius; ++l) {
        const Dyadic c = w.translation[i] + Dyadic(l);
        const Dyadic v = c * c;
        if (!m || v < *m) m = v;
      }
      total += *m;
    }
    for (const auto& sw : cyc.swaps) {
      std::optional<Dyadic> m;
      for (int lp = -box_radius; lp <= box_radius; ++lp)
        for (int lq = -box_radius; lq <= box_radius; ++lq) {
          const Dyadic cp = w.translation[sw.p] + Dyadic(lp);
          const Dyadic cq = w.translation[sw.q] + Dyadic(lq);
          const Dyadic sum = sw.sign > 0 ? cp + cq : cp - cq;
          const Dyadic v = sum * sum * Dyadic::half();
          if (!m || v < *m) m = v;
        }
      total += *m;
    }
    if (total < *best) best = total;
  }
  return *best;
}

}  // namespace flatpin

#endif  // FLATPIN_INVARIANTS_HPP
