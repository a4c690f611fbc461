#ifndef FLATPIN_CATALOG_HPP
#define FLATPIN_CATALOG_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "flatpin/bieberbach.hpp"
#include "flatpin/error.hpp"
#include "flatpin/invariants.hpp"
#include "flatpin/pinspin.hpp"

namespace flatpin {

/// Published values for a catalog group. A kind missing from `exponents` was
/// not published; a present kind mapped to nullopt means "no structure".
struct Expected {
  std::map<StructureKind, std::optional<int>> exponents;
  std::optional<SunadaProfile> sunada;
  std::optional<HomologyResult> h1;
  std::vector<std::int64_t> betti;
  std::optional<Dyadic> geodesic_sq;
  std::optional<bool> orientable;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  BieberbachGroup group;
  Expected expected;
};

namespace detail {

/// Generators of one isospectral pair. Diagonals are read downward; a 1 in a translation
/// column marks a coordinate equal to 1/2.
struct PairBlock {
  const char* name;
  std::vector<int> b1_diag, b2_diag, b3_diag;
  std::vector<int> b1, b1p, b2, b2p, b3, b3p;
};

inline const std::vector<PairBlock>& pair_blocks() {
  static const std::vector<PairBlock> pairs = {
      {"M1", {1, 1, 1, -1}, {1, 1, -1, 1}, {1, 1, -1, -1},
       {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}},
      {"M2", {1, 1, 1, -1}, {1, 1, -1, 1}, {1, 1, -1, -1},
       {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 0, 1}, {1, 1, 0, 0}, {0, 1, 1, 1}, {1, 0, 0, 0}},
      {"M3", {1, 1, -1, 1}, {-1, -1, -1, 1}, {-1, -1, 1, 1},
       {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 1}},
      {"M4", {1, 1, -1, 1}, {-1, -1, -1, 1}, {-1, -1, 1, 1},
       {1, 1, 0, 0}, {0, 1, 0, 1}, {0, 0, 0, 1}, {0, 0, 1, 1}, {1, 1, 0, 1}, {0, 1, 1, 0}},
      {"M5", {-1, -1, 1, 1}, {1, -1, -1, 1}, {-1, 1, -1, 1},
       {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 1}, {1, 1, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 0}},
  };
  return pairs;
}

inline DyadicVector halves(const std::vector<int>& marks, int n) {
  DyadicVector out(n);
  for (std::size_t i = 0; i < marks.size(); ++i)
    if (marks[i]) out[i] = Dyadic::half();
  return out;
}

inline BieberbachGroup pair_group(const std::vector<int>& d1, const std::vector<int>& d2,
                                   const std::vector<int>& t1, const std::vector<int>& t2) {
  const int n = static_cast<int>(d1.size());
  return BieberbachGroup::validate(n, {{SignedPermutation::diagonal(d1), halves(t1, n)},
                                       {SignedPermutation::diagonal(d2), halves(t2, n)}});
}

/// The B_3 and b_3 columns are redundant; they must agree with the product gamma_1 gamma_2.
inline void cross_check(const PairBlock& p) {
  const auto check = [&](const std::vector<int>& t1, const std::vector<int>& t2, const std::vector<int>& t3) {
    const auto g = pair_group(p.b1_diag, p.b2_diag, t1, t2);
    const auto& w = g.word_element(3);
    if (w.rotation != SignedPermutation::diagonal(p.b3_diag) ||
        reduce_mod_lattice(w.translation) != halves(t3, 4))
      throw Error(ErrorKind::InvalidGroup, std::string("table transcription of ") + p.name + " is inconsistent");
  };
  check(p.b1, p.b2, p.b3);
  check(p.b1p, p.b2p, p.b3p);
}

inline std::vector<int> extend(std::vector<int> v, std::initializer_list<int> tail) {
  v.insert(v.end(), tail);
  return v;
}

// "--" <-> nullopt; otherwise the exponent of 2.
struct PublishedCounts {
  std::optional<int> plus, minus, spin;
};

inline const std::map<std::string, PublishedCounts>& published_counts() {
  static const std::map<std::string, PublishedCounts> table = {
      {"M1", {std::nullopt, 4, std::nullopt}},       {"M1p", {3, 3, std::nullopt}},
      {"M1tilde", {std::nullopt, std::nullopt, std::nullopt}}, {"M1tildep", {5, 5, 5}},
      {"M2", {3, 3, std::nullopt}},                  {"M2p", {std::nullopt, std::nullopt, std::nullopt}},
      {"M3", {std::nullopt, std::nullopt, std::nullopt}}, {"M3p", {4, std::nullopt, std::nullopt}},
      {"M4", {4, std::nullopt, std::nullopt}},       {"M4p", {3, 3, std::nullopt}},
      {"M5", {4, 4, 4}},                             {"M5p", {3, 3, 3}},
  };
  return table;
}

inline SunadaProfile profile(std::initializer_list<std::pair<std::pair<int, int>, int>> items) {
  return SunadaProfile(items.begin(), items.end());
}

inline const std::map<std::string, SunadaProfile>& published_sunada() {
  static const std::map<std::string, SunadaProfile> table = {
      {"M1", profile({{{4, 0}, 1}, {{2, 2}, 1}, {{3, 1}, 1}, {{3, 2}, 1}})},
      {"M1tilde", profile({{{6, 0}, 1}, {{2, 2}, 1}, {{4, 1}, 1}, {{4, 2}, 1}})},
      {"M2", profile({{{4, 0}, 1}, {{2, 1}, 1}, {{3, 1}, 1}, {{3, 2}, 1}})},
      {"M3", profile({{{4, 0}, 1}, {{1, 1}, 1}, {{2, 1}, 1}, {{3, 1}, 1}})},
      {"M4", profile({{{4, 0}, 1}, {{1, 1}, 1}, {{2, 1}, 1}, {{3, 2}, 1}})},
      {"M5", profile({{{4, 0}, 1}, {{2, 1}, 3}})},
  };
  return table;
}

inline Expected pin_expected(const PublishedCounts& c, bool orientable) {
  Expected e;
  e.exponents[StructureKind::PinPlus] = c.plus;
  e.exponents[StructureKind::PinMinus] = c.minus;
  if (orientable) e.exponents[StructureKind::Spin] = c.spin;
  e.orientable = orientable;
  return e;
}

/// The twelve pair members by catalog name.
inline std::map<std::string, CatalogEntry> pair_entries() {
  std::map<std::string, CatalogEntry> out;
  for (const auto& p : pair_blocks()) {
    cross_check(p);
    const std::string base = p.name;
    const bool orientable = base == "M5";
    for (int primed = 0; primed < 2; ++primed) {
      const std::string name = base + (primed ? "p" : "");
      auto g = pair_group(p.b1_diag, p.b2_diag, primed ? p.b1p : p.b1, primed ? p.b2p : p.b2);
      Expected e = pin_expected(published_counts().at(name), orientable);
      e.sunada = published_sunada().at(base);
      out.emplace(name, CatalogEntry{name, "4-dim Z2^2 group of the pair {" + base + ", " + base + "'}", std::move(g),
                                     std::move(e)});
    }
    if (base == "M1") {
      // Adjoin the characters (-1, 1, -1) and (1, -1, -1) on two new axes.
      const auto d1 = extend(p.b1_diag, {-1, 1}), d2 = extend(p.b2_diag, {1, -1});
      for (int primed = 0; primed < 2; ++primed) {
        const std::string name = std::string("M1tilde") + (primed ? "p" : "");
        auto g = pair_group(d1, d2, extend(primed ? p.b1p : p.b1, {0, 0}), extend(primed ? p.b2p : p.b2, {0, 0}));
        Expected e = pin_expected(published_counts().at(name), true);
        e.sunada = published_sunada().at("M1tilde");
        out.emplace(name, CatalogEntry{name, "6-dim orientable extension of M1" + std::string(primed ? "'" : ""),
                                       std::move(g), std::move(e)});
      }
    }
  }
  return out;
}

}  // namespace detail

/// Gamma_{j,h} = < B_{j,h} L_{e_n / 2}, Z^n > with B_{j,h} = diag(J, ..., J, -1, ..., -1, 1, ..., 1).
inline BieberbachGroup family_gamma(int j, int h, int l) {
  if (j < 0 || h < 0 || l < 1 || j + h < 1) throw Error(ErrorKind::InvalidParameters, "need j, h >= 0, j + h >= 1 and l >= 1");
  const int n = 2 * j + h + l;
  std::vector<int> image(n), sign(n, 1);
  std::iota(image.begin(), image.end(), 0);
  for (int i = 0; i < j; ++i) std::swap(image[2 * i], image[2 * i + 1]);
  for (int i = 2 * j; i < 2 * j + h; ++i) sign[i] = -1;
  DyadicVector b(n);
  b[n - 1] = Dyadic::half();
  return BieberbachGroup::validate(n, {{SignedPermutation(image, sign), b}});
}

inline std::string family_name(int j, int h, int n) {
  return "G_" + std::to_string(j) + "_" + std::to_string(h) + "(" + std::to_string(n) + ")";
}

inline CatalogEntry family_entry(int j, int h, int l) {
  const int n = 2 * j + h + l;
  CatalogEntry e{family_name(j, h, n), "Z2-manifold M_{j,h} of the family F", family_gamma(j, h, l), {}};
  e.expected.exponents[StructureKind::PinPlus] = n - j;
  e.expected.exponents[StructureKind::PinMinus] = n - j;
  const bool orientable = (j + h) % 2 == 0;
  e.expected.orientable = orientable;
  if (orientable) e.expected.exponents[StructureKind::Spin] = n - j;
  e.expected.h1 = HomologyResult{j + l, std::vector<std::int64_t>(h, 2)};
  for (int p = 0; p <= n; ++p) e.expected.betti.push_back(betti_closed_form_z2(j, h, l, p));
  if (n == 3 && j == 0 && h == 1) e.expected.geodesic_sq = Dyadic(1, 2);
  return e;
}

/// The family F of Z2-manifolds in dimension n: 0 <= j <= [(n-1)/2], 0 <= h < n - 2j, j + h != 0.
inline std::vector<CatalogEntry> family_F(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameters, "the family needs n >= 2");
  std::vector<CatalogEntry> out;
  for (int j = 0; j <= (n - 1) / 2; ++j)
    for (int h = 0; h < n - 2 * j; ++h)
      if (j + h != 0) out.push_back(family_entry(j, h, n - 2 * j - h));
  return out;
}

/// Size of the family in closed form.
inline std::int64_t family_size_formula(std::int64_t n) {
  return n % 2 == 0 ? (n * n + 2 * n - 4) / 4 : (n * n + 2 * n - 3) / 4;
}

/// Every built-in name.
inline std::vector<std::string> builtin_names() {
  return {"M1",  "M1p", "M1tilde", "M1tildep", "M2",       "M2p",      "M3",       "M3p",      "M4",
          "M4p", "M5",  "M5p",     "dG1",      "dG1p",     "G_1_0(3)", "G_0_1(3)", "G_0_1p(3)", "G_0_2(3)"};
}

/// Names whose pin and spin counts appear in the 12-column table.
inline std::vector<std::string> pair_names() {
  return {"M1", "M1p", "M1tilde", "M1tildep", "M2", "M2p", "M3", "M3p", "M4", "M4p", "M5", "M5p"};
}

inline CatalogEntry builtin(const std::string& name) {
  static const std::map<std::string, CatalogEntry> table = detail::pair_entries();
  if (auto it = table.find(name); it != table.end()) return it->second;

  if (name == "dG1" || name == "dG1p") {
    const auto& base = table.at(name == "dG1" ? "M1" : "M1p");
    CatalogEntry e{name, "8-dim double of " + base.name, double_group(base.group), {}};
    e.expected.exponents[StructureKind::Spin] = name == "dG1" ? std::nullopt : std::optional<int>(7);
    e.expected.orientable = true;
    return e;
  }
  if (name == "G_0_1p(3)") {
    CatalogEntry e{name, "Z2-manifold M'_{0,1}, not isometric to M_{0,1}",
                   BieberbachGroup::validate(3, {{SignedPermutation::diagonal({-1, 1, 1}),
                                                  {Dyadic(0), Dyadic::half(), Dyadic::half()}}}),
                   {}};
    e.expected.exponents[StructureKind::PinPlus] = 3;
    e.expected.exponents[StructureKind::PinMinus] = 3;
    e.expected.orientable = false;
    e.expected.geodesic_sq = Dyadic::half();
    return e;
  }
  static const std::regex family(R"(G_(\d+)_(\d+)\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, family)) {
    const int j = std::stoi(m[1]), h = std::stoi(m[2]), n = std::stoi(m[3]);
    const int l = n - 2 * j - h;
    if (j + h >= 1 && l >= 1 && n <= 64) return family_entry(j, h, l);
  }
  throw Error(ErrorKind::UnknownName, "no catalog entry named '" + name + "'");
}

/// Existence per kind; spin is absent for non-orientable groups.
struct ExistenceProfile {
  bool pin_plus = false;
  bool pin_minus = false;
  std::optional<bool> spin;

  friend bool operator==(const ExistenceProfile&, const ExistenceProfile&) = default;
};

inline ExistenceProfile existence(const BieberbachGroup& g) {
  ExistenceProfile out;
  out.pin_plus = count_structures(g, StructureKind::PinPlus).exists;
  out.pin_minus = count_structures(g, StructureKind::PinMinus).exists;
  if (g.is_orientable()) out.spin = count_structures(g, StructureKind::Spin).exists;
  return out;
}

/// Isospectral pair whose structure existence differs.
struct SearchPair {
  BieberbachGroup first;
  BieberbachGroup second;
  SunadaProfile profile;
  ExistenceProfile first_existence;
  ExistenceProfile second_existence;
};

struct SearchResult {
  std::vector<SearchPair> pairs;
  std::uint64_t examined = 0;  // candidate generator tuples looked at
  std::size_t classes = 0;     // distinct canonical groups found
  bool complete = false;       // the whole candidate space was examined
};

namespace detail {

/// Nontrivial holonomy reps as (flipped-axis mask, half-translation mask), sorted.
using CanonicalKey = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

inline CanonicalKey canonical_key(const BieberbachGroup& g) {
  const int n = g.dim();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps;
  for (const auto& r : g.holonomy_reps()) {
    if (r.generators == 0) continue;
    std::uint64_t flip = 0, half = 0;
    for (int i = 0; i < n; ++i) {
      if (r.rotation.sign(i) < 0) flip |= std::uint64_t{1} << i;
      if (r.translation[i] == Dyadic::half()) half |= std::uint64_t{1} << i;
    }
    reps.emplace_back(flip, half);
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<CanonicalKey> best;
  do {
    CanonicalKey key;
    for (const auto& [flip, half] : reps) {
      std::uint64_t f = 0, h = 0;
      for (int i = 0; i < n; ++i) {
        if ((flip >> i) & 1U) f |= std::uint64_t{1} << perm[i];
        if ((half >> i) & 1U) h |= std::uint64_t{1} << perm[i];
      }
      key.emplace_back(f, h);
    }
    std::sort(key.begin(), key.end());
    if (!best || key < *best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

/// Multisets of n characters of Z_2^k (bit i of a character = axis flipped by gamma_{i+1}).
inline void character_multisets(int n, int k, int start, std::vector<int>& current,
                                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n) {
    out.push_back(current);
    return;
  }
  for (int c = start; c < (1 << k); ++c) {
    current.push_back(c);
    character_multisets(n, k, c, current, out);
    current.pop_back();
  }
}

}  // namespace detail

/// Diagonal-type groups with b_i in {0, 1/2}^n, up to coordinate permutation,
/// generator re-choice and translation conjugation; groups sharing a Sunada
/// profile with different existence are reported, one pair per profile and
/// pair of existence patterns. At most `budget` candidates are examined.
inline SearchResult search_pairs(int n, int k, std::uint64_t budget) {
  if (n < 1 || k < 1) throw Error(ErrorKind::InvalidParameters, "need n >= 1 and k >= 1");
  if (n > 8 || k > 3) throw Error(ErrorKind::BudgetExceeded, "search is limited to n <= 8 and k <= 3");
  SearchResult out;
  if (budget == 0) return out;

  std::vector<std::vector<int>> multisets;
  std::vector<int> current;
  detail::character_multisets(n, k, 0, current, multisets);

  std::map<detail::CanonicalKey, BieberbachGroup> found;
  bool stopped = false;
  for (const auto& chars : multisets) {
    if (stopped) break;
    // Rotations: generator i flips the axes whose character has bit i.
    std::vector<std::vector<int>> diag(k, std::vector<int>(n, 1));
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < k; ++i)
        if ((chars[a] >> i) & 1) diag[i][a] = -1;
    // Conjugating by a translation lets the first generator flipping an axis carry 0 there.
    std::vector<std::uint64_t> free_mask(k, 0);
    int free_bits = 0;
    for (int a = 0; a < n; ++a) {
      const int first_flip = chars[a] ? std::countr_zero(static_cast<unsigned>(chars[a])) : k;
      for (int i = 0; i < k; ++i)
        if (i != first_flip) {
          free_mask[i] |= std::uint64_t{1} << a;
          ++free_bits;
        }
    }
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << free_bits); ++code) {
      if (out.examined == budget) {
        stopped = true;
        break;
      }
      ++out.examined;
      std::vector<AffineElement> gens;
      int bit = 0;
      for (int i = 0; i < k; ++i) {
        DyadicVector b(n);
        for (int a = 0; a < n; ++a)
          if ((free_mask[i] >> a) & 1U) {
            if ((code >> bit) & 1U) b[a] = Dyadic::half();
            ++bit;
          }
        gens.push_back({SignedPermutation::diagonal(diag[i]), std::move(b)});
      }
      try {
        auto g = BieberbachGroup::validate(n, std::move(gens));
        auto key = detail::canonical_key(g);
        found.emplace(std::move(key), std::move(g));
      } catch (const ValidationError&) {
      }
    }
  }
  out.complete = !stopped;
  out.classes = found.size();

  std::map<SunadaProfile, std::vector<std::pair<const BieberbachGroup*, ExistenceProfile>>> by_profile;
  for (const auto& [key, g] : found) by_profile[sunada_profile(g)].emplace_back(&g, existence(g));
  for (const auto& [prof, members] : by_profile) {
    std::vector<std::pair<ExistenceProfile, const BieberbachGroup*>> firsts;
    for (const auto& [g, ex] : members)
      if (std::none_of(firsts.begin(), firsts.end(), [&](const auto& f) { return f.first == ex; }))
        firsts.emplace_back(ex, g);
    for (std::size_t a = 0; a < firsts.size(); ++a)
      for (std::size_t b = a + 1; b < firsts.size(); ++b)
        out.pairs.push_back({*firsts[a].second, *firsts[b].second, prof, firsts[a].first, firsts[b].first});
  }
  return out;
}

}  // namespace flatpin

#endif  // FLATPIN_CATALOG_HPP
