#ifndef FLATPIN_TESTS_SUPPORT_HPP
#define FLATPIN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "flatpin/flatpin.hpp"

namespace flatpin::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// Random signed-permutation involution of dimension n (2-cycles have equal signs).
inline SignedPermutation random_involution(int n) {
  std::vector<int> axes(n);
  std::iota(axes.begin(), axes.end(), 0);
  std::shuffle(axes.begin(), axes.end(), rng());
  std::vector<int> image(n), sign(n);
  int i = 0;
  const int swaps = uniform(0, n / 2);
  for (int s = 0; s < swaps; ++s, i += 2) {
    const int p = axes[i], q = axes[i + 1];
    const int sg = uniform(0, 1) ? 1 : -1;
    image[p] = q;
    image[q] = p;
    sign[p] = sign[q] = sg;
  }
  for (; i < n; ++i) {
    image[axes[i]] = axes[i];
    sign[axes[i]] = uniform(0, 1) ? 1 : -1;
  }
  return {image, sign};
}

inline SignedPermutation random_signed_permutation(int n) {
  std::vector<int> image(n), sign(n);
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng());
  for (auto& s : sign) s = uniform(0, 1) ? 1 : -1;
  return {image, sign};
}

/// Every signed-permutation involution of dimension n.
inline std::vector<SignedPermutation> all_involutions(int n) {
  std::vector<SignedPermutation> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool involutive = true;
    for (int i = 0; i < n; ++i)
      if (perm[perm[i]] != i) involutive = false;
    if (!involutive) continue;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> sign(n);
      bool ok = true;
      for (int i = 0; i < n; ++i) sign[i] = (mask >> i) & 1 ? -1 : 1;
      for (int i = 0; i < n; ++i)
        if (sign[i] != sign[perm[i]]) ok = false;
      if (ok) out.emplace_back(perm, sign);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Catalog entries holding Z2^k groups, for property sweeps.
inline std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (const auto& n : builtin_names()) out.push_back(builtin(n));
  return out;
}

inline std::vector<int> orientable_kinds_mask(const BieberbachGroup& g) {
  return g.is_orientable() ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 1};
}

inline StructureKind kind_at(int i) {
  return i == 0 ? StructureKind::PinPlus : i == 1 ? StructureKind::PinMinus : StructureKind::Spin;
}

}  // namespace flatpin::testing

#endif  // FLATPIN_TESTS_SUPPORT_HPP
