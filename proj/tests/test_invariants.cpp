#include <gtest/gtest.h>

#include "support.hpp"

using namespace flatpin;
using flatpin::testing::uniform;

namespace {

IntMatrix dense(const SignedPermutation& b) {
  IntMatrix m(b.dim(), b.dim());
  for (int c = 0; c < b.dim(); ++c) m(b.image(c), c) = b.sign(c);
  return m;
}

// Cofactor expansion; the minors here are at most 10 x 10 signed permutations.
std::int64_t det(const IntMatrix& m) {
  const int n = m.rows();
  if (n == 0) return 1;
  std::int64_t out = 0;
  for (int c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    out += (c % 2 ? -1 : 1) * m(0, c) * det(minor);
  }
  return out;
}

// tr(Lambda^p B) is the sum of the principal p x p minors.
std::int64_t trace_exterior(const SignedPermutation& b, int p) {
  const IntMatrix m = dense(b);
  const int n = b.dim();
  std::int64_t sum = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != p) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1U << i)) idx.push_back(i);
    IntMatrix sub(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) sub(i, j) = m(idx[i], idx[j]);
    sum += det(sub);
  }
  return sum;
}

std::vector<std::int64_t> betti_oracle(const BieberbachGroup& g) {
  std::vector<std::int64_t> out;
  for (int p = 0; p <= g.dim(); ++p) {
    std::int64_t sum = 0;
    for (WordMask s = 0; s < g.word_count(); ++s) sum += trace_exterior(g.word_rotation(s), p);
    out.push_back(sum / static_cast<std::int64_t>(g.word_count()));
  }
  return out;
}

// Minimum over the whole box of |(v + B v) / 2|^2, v = b_S + lambda, and 1.
Dyadic geodesic_oracle(const BieberbachGroup& g, int radius) {
  const int n = g.dim();
  Dyadic best(1);
  for (WordMask s = 1; s < g.word_count(); ++s) {
    const auto& w = g.word_element(s);
    LatticeVector lambda(n, -radius);
    for (;;) {
      const DyadicVector v = add(w.translation, to_dyadic(lambda));
      const DyadicVector bv = w.rotation.apply(v);
      Dyadic norm;
      for (int i = 0; i < n; ++i) {
        const Dyadic c = (v[i] + bv[i]) * Dyadic::half();
        norm += c * c;
      }
      if (norm < best) best = norm;
      int i = 0;
      while (i < n && lambda[i] == radius) lambda[i++] = -radius;
      if (i == n) break;
      ++lambda[i];
    }
  }
  return best;
}

SunadaProfile profile(std::initializer_list<std::pair<std::pair<int, int>, int>> items) {
  return SunadaProfile(items.begin(), items.end());
}

}  // namespace

TEST(Sunada, PublishedProfiles) {
  EXPECT_EQ(sunada_profile(builtin("M1").group), profile({{{4, 0}, 1}, {{2, 2}, 1}, {{3, 1}, 1}, {{3, 2}, 1}}));
  EXPECT_EQ(sunada_profile(builtin("M5").group), profile({{{4, 0}, 1}, {{2, 1}, 3}}));
  EXPECT_EQ(sunada_profile(BieberbachGroup::torus(5)), profile({{{5, 0}, 1}}));
  const auto tilde = sunada_profile(builtin("M1tilde").group);
  EXPECT_EQ(tilde.at({2, 2}), 1);
  EXPECT_EQ(tilde.at({4, 1}), 1);
  EXPECT_EQ(tilde.at({4, 2}), 1);
  EXPECT_EQ(tilde.at({6, 0}), 1);
}

TEST(Sunada, Isospectrality) {
  EXPECT_TRUE(isospectral_diagonal(builtin("M1").group, builtin("M1p").group));
  EXPECT_TRUE(isospectral_diagonal(builtin("M1tilde").group, builtin("M1tildep").group));
  EXPECT_FALSE(isospectral_diagonal(builtin("M1").group, builtin("M5").group));
  for (int i = 1; i <= 5; ++i) {
    const auto a = "M" + std::to_string(i);
    EXPECT_TRUE(isospectral_diagonal(builtin(a).group, builtin(a + "p").group)) << a;
  }
}

TEST(Sunada, Errors) {
  const auto j = builtin("G_1_0(3)").group;
  try {
    sunada_profile(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDiagonalType);
  }
  try {
    isospectral_diagonal(builtin("M1").group, builtin("G_0_1(3)").group);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Sunada, InvariantUnderCoordinatePermutation) {
  for (const auto& e : flatpin::testing::catalog_entries()) {
    if (!e.group.is_diagonal_type()) continue;
    std::vector<int> image(e.group.dim());
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), flatpin::testing::rng());
    const SignedPermutation c(image, std::vector<int>(image.size(), 1));
    EXPECT_EQ(sunada_profile(conjugate(e.group, c)), sunada_profile(e.group)) << e.name;
    auto gens = e.group.generators();
    std::reverse(gens.begin(), gens.end());
    EXPECT_EQ(sunada_profile(BieberbachGroup::validate(e.group.dim(), gens)), sunada_profile(e.group)) << e.name;
  }
}

TEST(Betti, Examples) {
  EXPECT_EQ(betti_numbers(builtin("G_0_1(3)").group), (std::vector<std::int64_t>{1, 2, 1, 0}));
  const auto t = betti_numbers(BieberbachGroup::torus(6));
  for (int p = 0; p <= 6; ++p) EXPECT_EQ(t[p], binomial(6, p));
  EXPECT_EQ(betti_closed_form_z2(0, 1, 2, 1), 2);
  EXPECT_THROW(betti(BieberbachGroup::torus(3), 4), Error);
  EXPECT_THROW(betti(BieberbachGroup::torus(3), -1), Error);
}

TEST(Betti, MatchesPrincipalMinorOracle) {
  for (const auto& e : flatpin::testing::catalog_entries()) EXPECT_EQ(betti_numbers(e.group), betti_oracle(e.group)) << e.name;
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = flatpin::testing::random_involution(uniform(1, 8));
    const auto poly = det_one_plus_t(b);
    for (int p = 0; p <= b.dim(); ++p) ASSERT_EQ(poly[p], trace_exterior(b, p)) << b.str();
  }
}

TEST(Betti, FamilyClosedForm) {
  for (int n = 2; n <= 10; ++n)
    for (int j = 0; 2 * j < n; ++j)
      for (int h = 0; 2 * j + h < n; ++h) {
        if (j + h == 0) continue;
        const int l = n - 2 * j - h;
        const auto b = betti_numbers(family_gamma(j, h, l));
        for (int p = 0; p <= n; ++p) ASSERT_EQ(b[p], betti_closed_form_z2(j, h, l, p)) << family_name(j, h, n);
      }
}

TEST(Betti, EqualFirstBettiPropagates) {
  for (int n = 2; n <= 8; ++n) {
    const auto fam = family_F(n);
    for (const auto& a : fam)
      for (const auto& b : fam) {
        const auto ba = betti_numbers(a.group), bb = betti_numbers(b.group);
        if (ba[1] == bb[1]) {
          EXPECT_EQ(ba, bb) << a.name << " " << b.name;
        }
      }
  }
}

TEST(Betti, EulerCharacteristicAndTopDegree) {
  for (const auto& e : flatpin::testing::catalog_entries()) {
    const auto b = betti_numbers(e.group);
    std::int64_t chi = 0;
    for (std::size_t p = 0; p < b.size(); ++p) chi += (p % 2 ? -1 : 1) * b[p];
    EXPECT_EQ(chi, 0) << e.name;
    EXPECT_EQ(b.front(), 1);
    EXPECT_EQ(b.back(), e.group.is_orientable() ? 1 : 0) << e.name;
  }
}

TEST(Homology, Examples) {
  EXPECT_EQ(homology_h1(BieberbachGroup::torus(4)), (HomologyResult{4, {}}));
  EXPECT_EQ(homology_h1(builtin("G_0_2(3)").group), (HomologyResult{1, {2, 2}}));
  EXPECT_EQ(homology_h1(builtin("G_0_1(3)").group), (HomologyResult{2, {2}}));
}

TEST(Homology, FamilyUpToDimensionEight) {
  for (int n = 2; n <= 8; ++n)
    for (const auto& e : family_F(n)) EXPECT_EQ(homology_h1(e.group), e.expected.h1) << e.name;
}

TEST(Homology, FreeRankIsFirstBetti) {
  for (const auto& e : flatpin::testing::catalog_entries()) {
    const auto h = homology_h1(e.group);
    EXPECT_EQ(h.free_rank, betti(e.group, 1)) << e.name;
    for (std::size_t i = 1; i < h.torsion.size(); ++i) EXPECT_EQ(h.torsion[i] % h.torsion[i - 1], 0);
  }
}

TEST(Geodesic, Examples) {
  EXPECT_EQ(shortest_geodesic_sq(builtin("G_0_1(3)").group, 3), Dyadic(1, 2));
  EXPECT_EQ(shortest_geodesic_sq(builtin("G_0_1p(3)").group, 3), Dyadic(1, 1));
  EXPECT_EQ(shortest_geodesic_sq(BieberbachGroup::torus(3), 3), Dyadic(1));
  EXPECT_THROW(shortest_geodesic_sq(BieberbachGroup::torus(3), 0), Error);
}

TEST(Geodesic, MatchesFullBoxOracle) {
  for (const auto& e : flatpin::testing::catalog_entries()) {
    if (e.group.dim() > 6) continue;
    for (int r : {1, 2}) EXPECT_EQ(shortest_geodesic_sq(e.group, r), geodesic_oracle(e.group, r)) << e.name;
  }
  for (int n = 2; n <= 5; ++n)
    for (const auto& e : family_F(n)) EXPECT_EQ(shortest_geodesic_sq(e.group, 2), geodesic_oracle(e.group, 2)) << e.name;
}

TEST(Geodesic, MonotoneInRadius) {
  for (const auto& e : flatpin::testing::catalog_entries()) {
    Dyadic prev = shortest_geodesic_sq(e.group, 1);
    for (int r = 2; r <= 4; ++r) {
      const Dyadic cur = shortest_geodesic_sq(e.group, r);
      EXPECT_FALSE(prev < cur) << e.name;
      prev = cur;
    }
  }
}
