// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flatpin/flatpin.hpp"

using namespace flatpin;

namespace {

constexpr auto kPlus = StructureKind::PinPlus;
constexpr auto kMinus = StructureKind::PinMinus;
constexpr auto kSpin = StructureKind::Spin;

using Problems = std::vector<std::string>;

class Checker {
 public:
  explicit Checker(Problems& out) : out_(out) {}
  void operator()(bool ok, const std::string& what) {
    if (!ok) out_.push_back(what);
  }

 private:
  Problems& out_;
};

int sign_of_parity(int e) { return e % 2 ? -1 : 1; }

std::set<GF2Word> computed_characters(const BieberbachGroup& g, StructureKind kind) {
  const auto chars = solution_characters(solve(assemble(g, kind)));
  return {chars.begin(), chars.end()};
}

// ---------------------------------------------------------------- criterion 1

// Exponents of 2; nullopt is "no structure".
struct Row {
  std::optional<int> plus, minus, spin;
};

Problems theorem_table() {
  Problems out;
  Checker check(out);
  const std::map<std::string, Row> table = {
      {"M1", {{}, 4, {}}},      {"M1p", {3, 3, {}}},  {"M1tilde", {{}, {}, {}}}, {"M1tildep", {5, 5, 5}},
      {"M2", {3, 3, {}}},       {"M2p", {{}, {}, {}}}, {"M3", {{}, {}, {}}},     {"M3p", {4, {}, {}}},
      {"M4", {4, {}, {}}},      {"M4p", {3, 3, {}}},  {"M5", {4, 4, 4}},         {"M5p", {3, 3, 3}},
  };
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, row] : table) {
    const auto g = builtin(name).group;
    const auto cmp = [&](StructureKind k, const std::optional<int>& want) {
      const auto c = count_structures(g, k);
      check(c.exists == want.has_value() && (!want || c.exponent == *want),
            name + " " + std::string(to_string(k)));
    };
    cmp(kPlus, row.plus);
    cmp(kMinus, row.minus);
    if (g.is_orientable()) {
      cmp(kSpin, row.spin);
    } else {
      check(!row.spin, name + " spin listed on a non-orientable manifold");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(secs < 1.0, "took " + std::to_string(secs) + " s");
  return out;
}

// ---------------------------------------------------------------- criterion 2

// Right-hand sides: Pm is +1 for pin+ and -1 for pin-, Mp the opposite.
enum Rhs { Pm, Mp, Neg };
struct ListedEq {
  std::vector<int> axes;  // 1-based
  Rhs rhs;
};

Problems delta_equations() {
  Problems out;
  Checker check(out);
  const std::map<std::string, std::vector<ListedEq>> table = {
      {"M1", {{{3}, Pm}, {{1, 2}, Pm}, {{1, 2}, Neg}}},
      {"M1p", {{{2}, Pm}, {{1, 4}, Pm}, {{1, 2}, Neg}}},
      {"M2", {{{3}, Pm}, {{2, 4}, Pm}, {{2}, Neg}}},
      {"M2p", {{{2}, Pm}, {{1, 2}, Pm}, {{1}, Neg}}},
      {"M3", {{{4}, Pm}, {{4}, Mp}, {{3}, Neg}}},
      {"M3p", {{{2}, Pm}, {{4}, Mp}, {{4}, Neg}}},
      {"M4", {{{1, 2}, Pm}, {{4}, Mp}, {{4}, Neg}}},
      {"M4p", {{{2, 4}, Pm}, {{4}, Mp}, {{3}, Neg}}},
      {"M5", {{{4}, Neg}, {{4}, Neg}, {{2}, Neg}}},
      // gamma_2^2 = e_1 for this group, so its row constrains delta_1.
      {"M5p", {{{3}, Neg}, {{1}, Neg}, {{2}, Neg}}},
  };
  for (const auto& [name, eqs] : table) {
    const auto g = builtin(name).group;
    for (auto k : {kPlus, kMinus}) {
      std::vector<GF2Equation> want;
      for (const auto& e : eqs) {
        GF2Equation row;
        for (int a : e.axes) row.coeffs |= GF2Word{1} << (a - 1);
        const int value = e.rhs == Neg ? -1 : (e.rhs == Pm) == (k == kPlus) ? 1 : -1;
        row.rhs = value < 0;
        want.push_back(row);
      }
      const auto got = assemble(g, k).equations();
      check(gf2_row_space(got, g.dim()) == gf2_row_space(want, g.dim()), name + " " + std::string(to_string(k)));
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 3

// Entry of a delta pattern: sign * delta_ref, or the constant sign when ref is 0.
struct Slot {
  int ref;
  int sign;
};
Slot free_(int i) { return {i, 1}; }
Slot neg(int i) { return {i, -1}; }
Slot fixed(int s) { return {0, s}; }

std::set<GF2Word> pattern_characters(const std::vector<Slot>& pattern) {
  const int n = static_cast<int>(pattern.size());
  std::set<GF2Word> out;
  for (GF2Word x = 0; x < (GF2Word{1} << n); ++x) {
    const auto d = delta_from_bits(x, n);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const auto& s = pattern[i];
      ok = ok && d[i] == (s.ref ? s.sign * d[s.ref - 1] : s.sign);
    }
    if (ok) out.insert(x);
  }
  return out;
}

struct ListedFamily {
  std::string group;
  std::vector<StructureKind> kinds;
  std::vector<Slot> pattern;
};

Problems structure_lists() {
  Problems out;
  Checker check(out);
  const std::vector<ListedFamily> lists = {
      {"M1", {kMinus}, {free_(1), neg(1), fixed(-1), free_(4)}},
      {"M1p", {kPlus}, {fixed(-1), fixed(1), free_(3), fixed(-1)}},
      {"M1p", {kMinus}, {fixed(1), fixed(-1), free_(3), fixed(-1)}},
      {"M2", {kPlus}, {free_(1), fixed(-1), fixed(1), fixed(-1)}},
      {"M2", {kMinus}, {free_(1), fixed(-1), fixed(-1), fixed(1)}},
      {"M3p", {kPlus}, {free_(1), fixed(1), free_(3), fixed(-1)}},
      {"M4", {kPlus}, {free_(1), free_(1), free_(3), fixed(-1)}},
      {"M4p", {kPlus}, {free_(1), fixed(-1), fixed(-1), fixed(-1)}},
      {"M4p", {kMinus}, {free_(1), fixed(-1), fixed(-1), fixed(1)}},
      {"M5", {kPlus, kMinus, kSpin}, {free_(1), fixed(-1), free_(3), fixed(-1)}},
      {"M5p", {kPlus, kMinus, kSpin}, {fixed(-1), fixed(-1), fixed(-1), free_(4)}},
      {"M1tildep", {kPlus, kMinus, kSpin}, {fixed(-1), fixed(-1), free_(3), fixed(1), free_(5), free_(6)}},
  };
  for (const auto& f : lists) {
    const auto g = builtin(f.group).group;
    for (auto k : f.kinds) {
      const auto want = pattern_characters(f.pattern);
      check(computed_characters(g, k) == want, f.group + " " + std::string(to_string(k)));
      // Each character carries 2^k choices of sigma.
      std::size_t listed = 0;
      for (const auto& p : enumerate(g, k, 1 << 16)) listed += want.count(delta_bits(p.delta));
      check(listed == want.size() << g.rank(), f.group + " enumeration size");
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4

Problems dimension_three() {
  Problems out;
  Checker check(out);
  struct Entry {
    std::string group;
    int exponent;
    std::function<std::vector<Slot>(int)> pattern;  // argument: +1 for pin+, -1 for pin-
  };
  const std::vector<Entry> rows = {
      {"G_1_0(3)", 2, [](int s) { return std::vector<Slot>{free_(1), free_(1), fixed(s)}; }},
      {"G_0_1(3)", 3, [](int s) { return std::vector<Slot>{free_(1), free_(2), fixed(s)}; }},
      {"G_0_1p(3)", 3, [](int s) { return std::vector<Slot>{free_(1), free_(2), Slot{2, s}}; }},
      {"G_0_2(3)", 3, [](int) { return std::vector<Slot>{free_(1), free_(2), fixed(-1)}; }},
  };
  for (auto k : {kPlus, kMinus}) {
    std::uint64_t total = 0;
    for (const auto& r : rows) {
      const auto g = builtin(r.group).group;
      const auto c = count_structures(g, k);
      check(c.exists && c.exponent == r.exponent, r.group + " " + std::string(to_string(k)) + " count");
      total += c.total().value_or(0);
      check(computed_characters(g, k) == pattern_characters(r.pattern(k == kPlus ? 1 : -1)),
            r.group + " " + std::string(to_string(k)) + " pattern");
    }
    check(total == 28, std::string(to_string(k)) + " total " + std::to_string(total));
  }
  const auto spin = builtin("G_0_2(3)").group;
  check(computed_characters(spin, kSpin) == pattern_characters({free_(1), free_(2), fixed(-1)}), "G_0_2(3) spin");
  return out;
}

// ---------------------------------------------------------------- criterion 5

int last_delta_oracle(int j, int h, StructureKind k) {
  if (k == kSpin) return sign_of_parity((j + h) / 2);
  if (k == kPlus) return sign_of_parity(j * h) * sign_of_parity(j / 2) * sign_of_parity(h / 2);
  return sign_of_parity(j * h) * sign_of_parity((j + 1) / 2) * sign_of_parity((h + 1) / 2);
}

Problems closed_form() {
  Problems out;
  Checker check(out);
  for (int n = 2; n <= 8; ++n)
    for (int j = 0; 2 * j < n; ++j)
      for (int h = 0; 2 * j + h < n; ++h) {
        if (j + h == 0) continue;
        const int l = n - 2 * j - h;
        const auto g = family_gamma(j, h, l);
        const auto name = family_name(j, h, n);
        for (auto k : {kPlus, kMinus, kSpin}) {
          if (k == kSpin && (j + h) % 2) continue;
          const auto c = count_structures(g, k);
          check(c.exists && c.exponent == n - j, name + " " + std::string(to_string(k)) + " count");
          std::set<GF2Word> want;
          for (GF2Word x = 0; x < (GF2Word{1} << n); ++x) {
            const auto d = delta_from_bits(x, n);
            bool ok = d[n - 1] == last_delta_oracle(j, h, k);
            for (int i = 0; i < j; ++i) ok = ok && d[2 * i] == d[2 * i + 1];
            if (ok) want.insert(x);
          }
          check(computed_characters(g, k) == want, name + " " + std::string(to_string(k)) + " constraints");
        }
      }
  for (int j = 0; 2 * j <= 10; ++j)
    for (int h = 0; 2 * j + h <= 10; ++h) {
      if (j + h == 0) continue;
      const int n = 2 * j + h;
      std::vector<int> image(n), sign(n, 1);
      for (int i = 0; i < n; ++i) image[i] = i;
      for (int i = 0; i < j; ++i) std::swap(image[2 * i], image[2 * i + 1]);
      for (int i = 2 * j; i < n; ++i) sign[i] = -1;
      const SignedPermutation b(image, sign);
      for (auto conv : {Convention::Plus, Convention::Minus}) {
        const auto u = u_pre(b, conv);
        const int direct = (u * u).unit_sign();
        const auto tag = "u^2 j=" + std::to_string(j) + " h=" + std::to_string(h);
        check(direct == u_square_formula(j, h, conv), tag);
        check(direct == last_delta_oracle(j, h, conv == Convention::Plus ? kPlus : kMinus), tag + " oracle");
      }
    }
  return out;
}

// ---------------------------------------------------------------- criterion 6

SunadaProfile profile(std::initializer_list<std::pair<std::pair<int, int>, int>> items) {
  return SunadaProfile(items.begin(), items.end());
}

Problems sunada() {
  Problems out;
  Checker check(out);
  const std::map<std::string, SunadaProfile> listed = {
      {"M1", profile({{{4, 0}, 1}, {{2, 2}, 1}, {{3, 1}, 1}, {{3, 2}, 1}})},
      {"M1tilde", profile({{{6, 0}, 1}, {{2, 2}, 1}, {{4, 1}, 1}, {{4, 2}, 1}})},
      {"M2", profile({{{4, 0}, 1}, {{2, 1}, 1}, {{3, 1}, 1}, {{3, 2}, 1}})},
      {"M3", profile({{{4, 0}, 1}, {{1, 1}, 1}, {{2, 1}, 1}, {{3, 1}, 1}})},
      {"M4", profile({{{4, 0}, 1}, {{1, 1}, 1}, {{2, 1}, 1}, {{3, 2}, 1}})},
      {"M5", profile({{{4, 0}, 1}, {{2, 1}, 3}})},
  };
  for (const auto& [name, want] : listed) {
    const auto a = builtin(name).group, b = builtin(name + "p").group;
    const auto pa = sunada_profile(a), pb = sunada_profile(b);
    check(pa == want, name + " profile");
    check(pb == want, name + "p profile");
    check(isospectral_diagonal(a, b), name + " pair");
    check(pa.count({a.dim(), 0}) && pa.at({a.dim(), 0}) == 1, name + " identity count");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 7

Problems topology() {
  Problems out;
  Checker check(out);
  for (int n = 2; n <= 8; ++n)
    for (int j = 0; 2 * j < n; ++j)
      for (int h = 0; 2 * j + h < n; ++h) {
        if (j + h == 0) continue;
        const int l = n - 2 * j - h;
        const auto g = family_gamma(j, h, l);
        const auto name = family_name(j, h, n);
        check(homology_h1(g) == HomologyResult{j + l, std::vector<std::int64_t>(h, 2)}, name + " H1");
        const auto betti = betti_numbers(g);
        for (int p = 0; p <= n; ++p) {
          std::int64_t want = 0;
          for (int i = 0; 2 * i <= p; ++i) want += binomial(j + h, 2 * i) * binomial(j + l, p - 2 * i);
          check(betti[p] == want, name + " beta_" + std::to_string(p));
        }
        check((betti[n] == 1) == g.is_orientable() && (betti[n] == 0 || betti[n] == 1), name + " beta_n");
      }
  for (int n = 2; n <= 20; ++n) {
    const std::int64_t want = n % 2 ? (n * n + 2 * n - 3) / 4 : (n * n + 2 * n - 4) / 4;
    check(static_cast<std::int64_t>(family_F(n).size()) == want, "|F(" + std::to_string(n) + ")|");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 8

Problems doubling() {
  Problems out;
  Checker check(out);
  const auto d1 = double_group(builtin("M1").group), d1p = double_group(builtin("M1p").group);
  check(d1.is_orientable() && !count_structures(d1, kSpin).exists, "dG1 spin");
  const auto c = count_structures(d1p, kSpin);
  check(c.exists && c.exponent == 7, "dG1p spin");
  for (const auto& name : builtin_names()) {
    const auto g = builtin(name).group;
    const auto dd = double_group(double_group(g));
    const auto sys = assemble(dd, kSpin);
    const auto cc = solve(sys).count;
    check(cc.exists && cc.exponent >= g.rank(), name + " d^2 count");
    // The trivial lattice character with each of the 2^k sigma choices.
    PinStructure trivial{kSpin, std::vector<int>(dd.dim(), 1), std::vector<int>(dd.rank(), 1)};
    check(satisfies(trivial, sys), name + " d^2 trivial character");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 9

Problems geodesics() {
  Problems out;
  Checker check(out);
  check(shortest_geodesic_sq(builtin("G_0_1(3)").group, 3) == Dyadic(1, 2), "M_{0,1}");
  check(shortest_geodesic_sq(builtin("G_0_1p(3)").group, 3) == Dyadic(1, 1), "M'_{0,1}");
  return out;
}

// ---------------------------------------------------------------- criterion 10

std::vector<SignedPermutation> involutions(int n) {
  std::vector<SignedPermutation> out;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    bool involutive = true;
    for (int i = 0; i < n; ++i) involutive = involutive && perm[perm[i]] == i;
    if (!involutive) continue;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> sign(n);
      bool ok = true;
      for (int i = 0; i < n; ++i) sign[i] = (mask >> i) & 1 ? -1 : 1;
      for (int i = 0; i < n; ++i) ok = ok && sign[i] == sign[perm[i]];
      if (ok) out.emplace_back(perm, sign);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Problems properties() {
  Problems out;
  Checker check(out);
  for (int n = 1; n <= 5; ++n)
    for (const auto& b : involutions(n))
      for (auto conv : {Convention::Plus, Convention::Minus}) {
        const auto u = u_pre(b, conv);
        check(mu_apply(u) == b, "mu(u_pre) " + b.str());
        const auto type = cycle_type(b);
        // A cyclic coordinate shift keeps the square.
        std::vector<int> image(n), ones(n, 1);
        for (int i = 0; i < n; ++i) image[i] = (i + 1) % n;
        const SignedPermutation c(image, ones);
        const auto v = u_pre(c * b * c.inverse(), conv);
        check((v * v).unit_sign() == (u * u).unit_sign() && (u * u).unit_sign() == u_square_formula(type.j, type.h, conv),
              "conjugated square " + b.str());
      }

  for (const auto& name : builtin_names()) {
    const auto g = builtin(name).group;
    std::vector<StructureKind> kinds{kPlus, kMinus};
    if (g.is_orientable()) kinds.push_back(kSpin);
    for (auto k : kinds) {
      const auto base = assemble(g, k);
      const auto count = solve(base).count;
      PreimageSigns signs(g.rank());
      for (int i = 0; i < g.rank(); ++i) signs[i] = i % 2 ? 1 : -1;
      check(solve(assemble(g, k, signs)).count == count, name + " preimage signs");

      std::vector<int> image(g.dim()), sign(g.dim());
      for (int i = 0; i < g.dim(); ++i) {
        image[i] = g.dim() - 1 - i;
        sign[i] = i % 3 ? 1 : -1;
      }
      check(count_structures(conjugate(g, SignedPermutation(image, sign)), k) == count, name + " conjugation");

      if (count.exists) check(count.exponent >= g.rank(), name + " exponent bound");

      const auto all = enumerate(g, k, 1 << 12);
      const auto results = homomorphism_check(all, g, 1);
      std::size_t passed = 0;
      for (const auto& r : results) passed += r.passed;
      check(passed == all.size(), name + " " + std::string(to_string(k)) + " homomorphism " + std::to_string(passed) +
                                      "/" + std::to_string(all.size()));
    }
    if (g.is_orientable()) {
      const auto p = count_structures(g, kPlus);
      check(p == count_structures(g, kMinus) && p == count_structures(g, kSpin), name + " orientable counts");
    }
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Problems()>>> criteria = {
      {"structure counts for the twelve manifolds", theorem_table},
      {"delta equations for the ten groups", delta_equations},
      {"listed structure families", structure_lists},
      {"dimension-3 structures", dimension_three},
      {"closed form for the family F", closed_form},
      {"Sunada numbers and isospectral pairs", sunada},
      {"homology, Betti numbers and |F(n)|", topology},
      {"doubling", doubling},
      {"shortest closed geodesics", geodesics},
      {"property suites", properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Problems problems;
    try {
      problems = criteria[i].second();
    } catch (const std::exception& e) {
      problems.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (problems.empty() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!problems.empty()) {
      line << " (" << problems.size() << " problem" << (problems.size() > 1 ? "s" : "") << ": " << problems.front();
      if (problems.size() > 1) line << ", ...";
      line << ")";
      ++failures;
    }
    std::cout << line.str() << '\n';
  }
  return failures ? 1 : 0;
}
