#ifndef FLATPIN_REPRODUCE_HPP
#define FLATPIN_REPRODUCE_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "flatpin/catalog.hpp"
#include "flatpin/invariants.hpp"
#include "flatpin/pinspin.hpp"
#include "flatpin/report.hpp"

namespace flatpin {

struct ReproduceLine {
  std::string section;
  std::string item;
  std::string expected;
  std::string computed;
  bool ok = false;
};

namespace detail {

inline std::string exponent_str(const std::optional<int>& e) { return e ? "2^" + std::to_string(*e) : "--"; }

inline std::string computed_count(const BieberbachGroup& g, StructureKind k) {
  if (k == StructureKind::Spin && !g.is_orientable()) return "--";
  return count_str(count_structures(g, k));
}

inline void push(std::vector<ReproduceLine>& out, std::string section, std::string item, std::string expected,
                 std::string computed) {
  const bool ok = expected == computed;
  out.push_back({std::move(section), std::move(item), std::move(expected), std::move(computed), ok});
}

}  // namespace detail

/// Recomputes every published value held by the catalog.
inline std::vector<ReproduceLine> reproduce_all() {
  std::vector<ReproduceLine> out;
  const StructureKind kinds[] = {StructureKind::PinPlus, StructureKind::PinMinus, StructureKind::Spin};

  for (const auto& name : pair_names()) {
    const auto e = builtin(name);
    for (auto k : kinds) {
      const auto it = e.expected.exponents.find(k);
      const std::string expected = it == e.expected.exponents.end() ? "--" : detail::exponent_str(it->second);
      detail::push(out, "structure table", name + " " + std::string(to_string(k)), expected,
                   detail::computed_count(e.group, k));
    }
  }
  for (const auto& name : pair_names()) {
    const auto e = builtin(name);
    detail::push(out, "sunada", name, sunada_str(*e.expected.sunada), sunada_str(sunada_profile(e.group)));
    detail::push(out, "orientable", name, *e.expected.orientable ? "yes" : "no",
                 e.group.is_orientable() ? "yes" : "no");
  }

  std::uint64_t totals[2] = {0, 0};
  for (const char* name : {"G_1_0(3)", "G_0_1(3)", "G_0_1p(3)", "G_0_2(3)"}) {
    const auto e = builtin(name);
    for (int s = 0; s < 2; ++s) {
      const auto k = kinds[s];
      const auto c = count_structures(e.group, k);
      totals[s] += c.total().value_or(0);
      detail::push(out, "dimension 3", std::string(name) + " " + std::string(to_string(k)),
                   detail::exponent_str(e.expected.exponents.at(k)), count_str(c));
    }
    if (e.expected.geodesic_sq)
      detail::push(out, "geodesics", name, e.expected.geodesic_sq->str(), shortest_geodesic_sq(e.group, 3).str());
  }
  detail::push(out, "dimension 3", "total pin+", "28", std::to_string(totals[0]));
  detail::push(out, "dimension 3", "total pin-", "28", std::to_string(totals[1]));

  for (const char* name : {"dG1", "dG1p"}) {
    const auto e = builtin(name);
    detail::push(out, "doubling", std::string(name) + " spin",
                 detail::exponent_str(e.expected.exponents.at(StructureKind::Spin)),
                 detail::computed_count(e.group, StructureKind::Spin));
  }

  for (int n = 2; n <= 20; ++n)
    detail::push(out, "family size", "n=" + std::to_string(n), std::to_string(family_size_formula(n)),
                 std::to_string(family_F(n).size()));

  for (int n = 2; n <= 8; ++n)
    for (const auto& e : family_F(n)) {
      for (auto k : kinds) {
        const auto it = e.expected.exponents.find(k);
        if (it == e.expected.exponents.end()) continue;
        detail::push(out, "family structures", e.name + " " + std::string(to_string(k)),
                     detail::exponent_str(it->second), detail::computed_count(e.group, k));
      }
      detail::push(out, "family H1", e.name, h1_str(*e.expected.h1), h1_str(homology_h1(e.group)));
      std::string expected, computed;
      const auto b = betti_numbers(e.group);
      for (std::size_t p = 0; p < b.size(); ++p) {
        expected += (p ? " " : "") + std::to_string(e.expected.betti[p]);
        computed += (p ? " " : "") + std::to_string(b[p]);
      }
      detail::push(out, "family betti", e.name, expected, computed);
    }
  return out;
}

inline std::string reproduce_text(const std::vector<ReproduceLine>& lines) {
  std::size_t w_item = 4, w_exp = 8, w_comp = 8;
  for (const auto& l : lines) {
    w_item = std::max(w_item, l.item.size());
    w_exp = std::max(w_exp, l.expected.size());
    w_comp = std::max(w_comp, l.computed.size());
  }
  const auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream out;
  std::string section;
  std::size_t bad = 0, table_bad = 0;
  for (const auto& l : lines) {
    if (l.section != section) {
      section = l.section;
      out << "\n[" << section << "]\n";
      out << "  " << pad("item", w_item) << "  " << pad("expected", w_exp) << "  " << pad("computed", w_comp) << "\n";
    }
    out << "  " << pad(l.item, w_item) << "  " << pad(l.expected, w_exp) << "  " << pad(l.computed, w_comp) << "  "
        << (l.ok ? "ok" : "MISMATCH") << "\n";
    if (!l.ok) {
      ++bad;
      if (l.section == "structure table") ++table_bad;
    }
  }
  out << "\n";
  if (table_bad == 0) out << "all 12 manifolds match the structure-count table\n";
  out << lines.size() << " checks, " << bad << " mismatches\n";
  return out.str();
}

}  // namespace flatpin

#endif  // FLATPIN_REPRODUCE_HPP
