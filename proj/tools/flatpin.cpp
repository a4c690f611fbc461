// flatpin: pin and spin structures on flat manifolds with holonomy Z2^k.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "flatpin/flatpin.hpp"

namespace {

using namespace flatpin;

enum ExitCode {
  kOk = 0,
  kMismatch = 1,
  kParse = 2,
  kValidation = 3,
  kNotOrientable = 4,
  kNotDiagonal = 5,
  kUnknownName = 6,
  kOther = 7,
  kUsage = 64,
};

/// "@NAME" loads a catalog entry; anything else is a group-file path ("-" is stdin).
BieberbachGroup load(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return builtin(arg.substr(1)).group;
  if (arg == "-") {
    auto d = parse_group_description(std::cin);
    return BieberbachGroup::validate(d.dim, std::move(d.generators));
  }
  return load_group(arg);
}

StructureKind parse_kind(const std::string& s) {
  if (s == "pin+") return StructureKind::PinPlus;
  if (s == "pin-") return StructureKind::PinMinus;
  return StructureKind::Spin;
}

void emit(const Json& j, const std::string& text, bool json) {
  if (json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string show_entry(const CatalogEntry& e) {
  std::ostringstream out;
  const auto& g = e.group;
  out << e.name << ": " << e.description << "\n";
  out << "dimension " << g.dim() << ", holonomy Z2^" << g.rank() << "\n";
  for (WordMask s = 1; s < g.word_count(); ++s) {
    std::string label;
    for (int i = 0; i < g.rank(); ++i)
      if (s & (WordMask{1} << i)) label += (label.empty() ? "" : " ") + ("gamma_" + std::to_string(i + 1));
    const auto& w = g.word_element(s);
    out << "  " << label << ": B = " << w.rotation.str() << ", b = " << vector_str(reduce_mod_lattice(w.translation))
        << " mod Z^" << g.dim() << "\n";
  }
  const auto& ex = e.expected;
  if (!ex.exponents.empty()) {
    out << "published counts:";
    for (const auto& [k, v] : ex.exponents) out << " " << to_string(k) << " " << (v ? "2^" + std::to_string(*v) : "--");
    out << "\n";
  }
  if (ex.sunada) out << "published sunada: " << sunada_str(*ex.sunada) << "\n";
  if (ex.h1) out << "published H1: " << h1_str(*ex.h1) << "\n";
  if (ex.geodesic_sq) out << "published geodesic^2: " << ex.geodesic_sq->str() << "\n";
  return out.str();
}

Json search_json(const SearchResult& r) {
  Json out;
  out["examined"] = r.examined;
  out["classes"] = r.classes;
  out["complete"] = r.complete;
  Json pairs = Json::array();
  const auto ex = [](const ExistenceProfile& p) {
    Json j;
    j["pin+"] = p.pin_plus;
    j["pin-"] = p.pin_minus;
    j["spin"] = p.spin ? Json(*p.spin) : Json(nullptr);
    return j;
  };
  for (const auto& p : r.pairs)
    pairs.push_back({{"first", format_group(p.first)},
                     {"second", format_group(p.second)},
                     {"sunada", sunada_json(p.profile)},
                     {"first_exists", ex(p.first_existence)},
                     {"second_exists", ex(p.second_existence)}});
  out["pairs"] = pairs;
  return out;
}

std::string search_text(const SearchResult& r) {
  std::ostringstream out;
  const auto ex = [](const ExistenceProfile& p) {
    return std::string("pin+ ") + (p.pin_plus ? "yes" : "no") + ", pin- " + (p.pin_minus ? "yes" : "no") +
           ", spin " + (p.spin ? (*p.spin ? "yes" : "no") : "n/a");
  };
  out << "examined " << r.examined << " candidates, " << r.classes << " classes"
      << (r.complete ? "" : " (budget reached)") << "\n";
  out << r.pairs.size() << " isospectral pairs with differing existence\n";
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto& p = r.pairs[i];
    out << "\npair " << i + 1 << ": sunada " << sunada_str(p.profile) << "\n";
    out << "first (" << ex(p.first_existence) << ")\n" << format_group(p.first);
    out << "second (" << ex(p.second_existence) << ")\n" << format_group(p.second);
  }
  return out.str();
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse: return kParse;
    case ErrorKind::NotOrientable: return kNotOrientable;
    case ErrorKind::NotDiagonalType: return kNotDiagonal;
    case ErrorKind::UnknownName: return kUnknownName;
    default: return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pin and spin structures on flat manifolds with holonomy Z2^k"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of text");

  auto* structures = app.add_subcommand("structures", "count or enumerate pin+, pin- or spin structures");
  std::string file1, file2;
  std::string convention = "pin+";
  bool do_enumerate = false;
  std::uint64_t limit = 4096;
  structures->add_option("group", file1, "group file, '-' for stdin, or @NAME for a catalog entry")->required();
  structures->add_option("--convention", convention, "pin+, pin- or spin")
      ->check(CLI::IsMember({"pin+", "pin-", "spin"}));
  structures->add_flag("--enumerate", do_enumerate, "list every structure");
  structures->add_option("--limit", limit, "refuse to enumerate more than this many");

  auto* invariants = app.add_subcommand("invariants", "orientability, Sunada numbers, Betti numbers, H1, geodesics");
  int radius = kDefaultGeodesicRadius;
  invariants->add_option("group", file1, "group file or @NAME")->required();
  invariants->add_option("--radius", radius, "lattice box radius for the geodesic search")->check(CLI::PositiveNumber);

  auto* isospectral = app.add_subcommand("isospectral", "compare Sunada numbers of two diagonal-type groups");
  isospectral->add_option("first", file1, "group file or @NAME")->required();
  isospectral->add_option("second", file2, "group file or @NAME")->required();

  auto* reproduce = app.add_subcommand("reproduce", "recompute every published value in the catalog");

  auto* catalog = app.add_subcommand("catalog", "built-in groups");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list names");
  std::string name;
  auto* show = catalog->add_subcommand("show", "generators and published values");
  show->add_option("name", name)->required();
  auto* exporter = catalog->add_subcommand("export", "group file of an entry");
  exporter->add_option("name", name)->required();

  auto* doubler = app.add_subcommand("double", "print the doubled group as a group file");
  doubler->add_option("group", file1, "group file or @NAME")->required();

  auto* search = app.add_subcommand("search", "isospectral pairs of diagonal type with differing structure existence");
  int dim = 4, holonomy = 2;
  std::uint64_t budget = 100000;
  search->add_option("--dim", dim, "dimension, at most 8");
  search->add_option("--holonomy", holonomy, "k for holonomy Z2^k, at most 3");
  search->add_option("--budget", budget, "candidate generator tuples to examine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*structures) {
      const auto g = load(file1);
      const auto r = structures_report(g, parse_kind(convention), do_enumerate ? std::optional(limit) : std::nullopt);
      emit(to_json(r), to_text(r), json);
    } else if (*invariants) {
      const auto r = invariants_report(load(file1), radius);
      emit(to_json(r), to_text(r), json);
    } else if (*isospectral) {
      const auto a = load(file1), b = load(file2);
      const bool same = isospectral_diagonal(a, b);
      const auto pa = sunada_profile(a), pb = sunada_profile(b);
      Json j{{"first", {{"sunada", sunada_json(pa)}}}, {"second", {{"sunada", sunada_json(pb)}}}, {"isospectral", same}};
      emit(j,
           "first   " + sunada_str(pa) + "\nsecond  " + sunada_str(pb) + "\nisospectral " + (same ? "yes" : "no") + "\n",
           json);
    } else if (*reproduce) {
      const auto lines = reproduce_all();
      bool ok = true;
      Json rows = Json::array();
      for (const auto& l : lines) {
        ok = ok && l.ok;
        rows.push_back({{"section", l.section}, {"item", l.item}, {"expected", l.expected}, {"computed", l.computed},
                        {"ok", l.ok}});
      }
      emit(Json{{"checks", rows}, {"ok", ok}}, reproduce_text(lines), json);
      return ok ? kOk : kMismatch;
    } else if (*catalog) {
      if (*list) {
        Json names = Json::array();
        std::string text;
        for (const auto& n : builtin_names()) {
          names.push_back(n);
          text += n + "  " + builtin(n).description + "\n";
        }
        text += "G_j_h(n)  any member of the family F, e.g. G_1_1(5)\n";
        emit(names, text, json);
      } else if (*show) {
        std::cout << show_entry(builtin(name));
      } else if (*exporter) {
        std::cout << format_group(builtin(name).group, name);
      }
    } else if (*doubler) {
      std::cout << format_group(double_group(load(file1)));
    } else if (*search) {
      const auto r = search_pairs(dim, holonomy, budget);
      emit(search_json(r), search_text(r), json);
    }
  } catch (const ValidationError& e) {
    std::cerr << "invalid group: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return kOk;
}
