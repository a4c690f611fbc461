#ifndef FLATPIN_REPORT_HPP
#define FLATPIN_REPORT_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatpin/bieberbach.hpp"
#include "flatpin/invariants.hpp"
#include "flatpin/pinspin.hpp"

namespace flatpin {

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

/// "d1*d2 = -1" style text of one equation; "0 = 1" for the empty contradiction.
inline std::string equation_str(const GF2Equation& e) {
  std::string lhs;
  for (int i = 0; i < 64; ++i)
    if ((e.coeffs >> i) & 1U) lhs += (lhs.empty() ? "d" : "*d") + std::to_string(i + 1);
  if (lhs.empty()) return e.rhs ? "1 = -1" : "1 = 1";
  return lhs + " = " + (e.rhs ? "-1" : "1");
}

inline std::string origin_str(const RowOrigin& o) {
  if (o.kind == RowOrigin::Kind::Lattice)
    return "gamma_" + std::to_string(o.generator + 1) + " on e_" + std::to_string(o.axis + 1);
  return "square of " + mask_str(o.word);
}

inline std::string h1_str(const HomologyResult& h) {
  std::string out;
  if (h.free_rank > 0) out = h.free_rank == 1 ? "Z" : "Z^" + std::to_string(h.free_rank);
  std::vector<std::pair<std::int64_t, int>> groups;
  for (auto f : h.torsion) {
    if (!groups.empty() && groups.back().first == f) ++groups.back().second;
    else groups.emplace_back(f, 1);
  }
  for (const auto& [f, m] : groups) {
    if (!out.empty()) out += " + ";
    out += "Z_" + std::to_string(f) + (m > 1 ? "^" + std::to_string(m) : "");
  }
  return out.empty() ? "0" : out;
}

inline std::string count_str(const StructureCount& c) {
  return c.exists ? "2^" + std::to_string(c.exponent) : "--";
}

inline Json sunada_json(const SunadaProfile& p) {
  Json out = Json::array();
  for (const auto& [dt, count] : p) out.push_back({{"d", dt.first}, {"t", dt.second}, {"count", count}});
  return out;
}

inline std::string sunada_str(const SunadaProfile& p) {
  std::string out;
  for (const auto& [dt, count] : p)
    out += (out.empty() ? "" : ", ") + ("c" + std::to_string(dt.first) + "," + std::to_string(dt.second)) + "=" +
           std::to_string(count);
  return out;
}

inline Json witness_json(const NonexistenceWitness& w) {
  Json out;
  if (w.clash) {
    out["clash"] = {{"first", mask_str(w.clash->first)},
                    {"second", mask_str(w.clash->second)},
                    {"square", w.clash->square},
                    {"first_sign", w.clash->first_sign},
                    {"second_sign", w.clash->second_sign}};
  } else {
    out["clash"] = nullptr;
  }
  Json rows = Json::array();
  for (const auto& r : w.certificate) rows.push_back({{"origin", origin_str(r.origin)}, {"equation", equation_str(r.equation)}});
  out["certificate"] = rows;
  return out;
}

inline std::string witness_str(const NonexistenceWitness& w) {
  std::ostringstream out;
  if (w.clash) {
    out << "words " << mask_str(w.clash->first) << " and " << mask_str(w.clash->second) << " square to L"
        << vector_str(w.clash->square) << " but their Clifford squares are " << w.clash->first_sign << " and "
        << w.clash->second_sign << "\n";
  }
  out << "inconsistent rows:\n";
  for (const auto& r : w.certificate) out << "  " << equation_str(r.equation) << "   (" << origin_str(r.origin) << ")\n";
  return out.str();
}

/// Result of the structures command.
struct StructuresReport {
  StructureKind kind;
  StructureCount count;
  std::vector<std::string> constraints;
  std::vector<int> free_deltas;  // 1-based
  std::optional<NonexistenceWitness> witness;
  std::optional<std::vector<PinStructure>> structures;
};

inline StructuresReport structures_report(const BieberbachGroup& g, StructureKind kind,
                                          std::optional<std::uint64_t> enumerate_limit) {
  const StructureSolution sol = solve(assemble(g, kind));
  StructuresReport r{kind, sol.count, {}, {}, std::nullopt, std::nullopt};
  if (sol.count.exists) {
    r.constraints = describe_constraints(sol.reduced);
    for (int f : sol.reduced.free_columns) r.free_deltas.push_back(f + 1);
    if (enumerate_limit) r.structures = enumerate(g, kind, *enumerate_limit);
  } else {
    r.witness = nonexistence_witness(g, kind);
  }
  return r;
}

inline Json to_json(const StructuresReport& r) {
  Json out;
  out["convention"] = std::string(to_string(r.kind));
  out["count"] = r.count.total() ? Json(*r.count.total()) : Json(count_str(r.count));
  out["exponent"] = r.count.exists ? Json(r.count.exponent) : Json(nullptr);
  out["rank"] = r.count.rank;
  out["delta_constraints"] = r.constraints;
  out["free_deltas"] = r.free_deltas;
  out["witness"] = r.witness ? witness_json(*r.witness) : Json(nullptr);
  if (r.structures) {
    Json list = Json::array();
    for (const auto& p : *r.structures) list.push_back({{"delta", p.delta}, {"sigma", p.sigma}});
    out["structures"] = list;
  }
  return out;
}

inline std::string to_text(const StructuresReport& r) {
  std::ostringstream out;
  out << "convention  " << to_string(r.kind) << "\n";
  out << "count       " << count_str(r.count);
  if (auto t = r.count.total(); t && r.count.exists) out << " = " << *t;
  out << "\n";
  out << "rank        " << r.count.rank << "\n";
  if (r.count.exists) {
    out << "constraints " << (r.constraints.empty() ? "none" : "") << "\n";
    for (const auto& c : r.constraints) out << "  " << c << "\n";
    out << "free        ";
    for (std::size_t i = 0; i < r.free_deltas.size(); ++i) out << (i ? " " : "") << "d" << r.free_deltas[i];
    out << "\n";
  }
  if (r.witness) out << "witness\n" << witness_str(*r.witness);
  if (r.structures) {
    out << "structures\n";
    for (const auto& p : *r.structures) {
      out << "  delta=(";
      for (std::size_t i = 0; i < p.delta.size(); ++i) out << (i ? "," : "") << p.delta[i];
      out << ") sigma=(";
      for (std::size_t i = 0; i < p.sigma.size(); ++i) out << (i ? "," : "") << p.sigma[i];
      out << ")\n";
    }
  }
  return out.str();
}

struct InvariantsReport {
  int dim = 0;
  int rank = 0;
  bool orientable = false;
  bool diagonal_type = false;
  std::optional<SunadaProfile> sunada;
  std::vector<std::int64_t> betti;
  HomologyResult h1;
  Dyadic geodesic_sq;
};

inline constexpr int kDefaultGeodesicRadius = 3;

inline InvariantsReport invariants_report(const BieberbachGroup& g, int box_radius = kDefaultGeodesicRadius) {
  InvariantsReport r;
  r.dim = g.dim();
  r.rank = g.rank();
  r.orientable = g.is_orientable();
  r.diagonal_type = g.is_diagonal_type();
  if (r.diagonal_type) r.sunada = sunada_profile(g);
  r.betti = betti_numbers(g);
  r.h1 = homology_h1(g);
  r.geodesic_sq = shortest_geodesic_sq(g, box_radius);
  return r;
}

inline Json to_json(const InvariantsReport& r) {
  Json out;
  out["dim"] = r.dim;
  out["holonomy_rank"] = r.rank;
  out["orientable"] = r.orientable;
  out["diagonal_type"] = r.diagonal_type;
  out["sunada"] = r.sunada ? sunada_json(*r.sunada) : Json(nullptr);
  out["betti"] = r.betti;
  out["h1"] = {{"free_rank", r.h1.free_rank}, {"torsion", r.h1.torsion}, {"text", h1_str(r.h1)}};
  out["geodesic_sq"] = r.geodesic_sq.str();
  return out;
}

inline std::string to_text(const InvariantsReport& r) {
  std::ostringstream out;
  out << "dimension     " << r.dim << "\n";
  out << "holonomy      Z2^" << r.rank << "\n";
  out << "orientable    " << (r.orientable ? "yes" : "no") << "\n";
  out << "diagonal type " << (r.diagonal_type ? "yes" : "no") << "\n";
  out << "sunada        " << (r.sunada ? sunada_str(*r.sunada) : "n/a (not of diagonal type)") << "\n";
  out << "betti         ";
  for (std::size_t i = 0; i < r.betti.size(); ++i) out << (i ? " " : "") << r.betti[i];
  out << "\n";
  out << "H1            " << h1_str(r.h1) << "\n";
  out << "geodesic^2    " << r.geodesic_sq.str() << "\n";
  return out.str();
}

}  // namespace flatpin

#endif  // FLATPIN_REPORT_HPP
