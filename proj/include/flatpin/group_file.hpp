#ifndef FLATPIN_GROUP_FILE_HPP
#define FLATPIN_GROUP_FILE_HPP

#include <bit>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "flatpin/bieberbach.hpp"
#include "flatpin/error.hpp"

namespace flatpin {

/// Unvalidated contents of a group file.
///
///   # comment
///   dim 3
///   gen
///   B diag -1 1 1            (or: B perm (1 2)+ 3-, unlisted axes fixed)
///   b 0 0 1/2
struct GroupDescription {
  int dim = 0;
  std::vector<AffineElement> generators;
};

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline Dyadic parse_rational(const std::string& tok, int line) {
  const auto slash = tok.find('/');
  const auto num = parse_int(std::string_view(tok).substr(0, slash));
  if (!num) parse_fail(line, "bad number '" + tok + "'");
  if (slash == std::string::npos) return Dyadic(*num);
  const auto den = parse_int(std::string_view(tok).substr(slash + 1));
  if (!den || *den <= 0) parse_fail(line, "bad denominator in '" + tok + "'");
  if ((*den & (*den - 1)) != 0) parse_fail(line, "denominator of '" + tok + "' is not a power of 2");
  return Dyadic(*num, std::countr_zero(static_cast<std::uint64_t>(*den)));
}

inline int parse_axis(std::string_view s, int n, int line) {
  const auto v = parse_int(s);
  if (!v || *v < 1 || *v > n) parse_fail(line, "axis '" + std::string(s) + "' out of range 1.." + std::to_string(n));
  return static_cast<int>(*v) - 1;
}

inline SignedPermutation parse_rotation(const std::vector<std::string>& words, int n, int line) {
  if (words.size() < 2) parse_fail(line, "B needs 'diag' or 'perm'");
  if (words[1] == "diag") {
    if (static_cast<int>(words.size()) != n + 2) parse_fail(line, "B diag needs " + std::to_string(n) + " entries");
    std::vector<int> signs;
    for (std::size_t i = 2; i < words.size(); ++i) {
      if (words[i] == "1" || words[i] == "+1") signs.push_back(1);
      else if (words[i] == "-1") signs.push_back(-1);
      else parse_fail(line, "diagonal entry '" + words[i] + "' is not 1 or -1");
    }
    return SignedPermutation::diagonal(signs);
  }
  if (words[1] != "perm") parse_fail(line, "B needs 'diag' or 'perm', got '" + words[1] + "'");
  std::vector<int> image(n), sign(n, 1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) image[i] = i;
  const auto claim = [&](int axis) {
    if (used[axis]) parse_fail(line, "axis " + std::to_string(axis + 1) + " appears twice");
    used[axis] = true;
  };
  // Tokens "(p q)+" may arrive split as "(p" "q)+".
  std::string joined;
  for (std::size_t i = 2; i < words.size(); ++i) joined += words[i] + " ";
  std::size_t pos = 0;
  while (pos < joined.size()) {
    if (joined[pos] == ' ') {
      ++pos;
      continue;
    }
    if (joined[pos] == '(') {
      const auto close = joined.find(')', pos);
      if (close == std::string::npos || close + 1 >= joined.size()) parse_fail(line, "unterminated 2-cycle");
      const auto inner = split_words(joined.substr(pos + 1, close - pos - 1));
      if (inner.size() != 2) parse_fail(line, "cycles must have exactly two axes");
      const char s = joined[close + 1];
      if (s != '+' && s != '-') parse_fail(line, "2-cycle needs a trailing + or -");
      const int p = parse_axis(inner[0], n, line), q = parse_axis(inner[1], n, line);
      if (p == q) parse_fail(line, "2-cycle repeats an axis");
      claim(p);
      claim(q);
      image[p] = q;
      image[q] = p;
      sign[p] = sign[q] = s == '+' ? 1 : -1;
      pos = close + 2;
      continue;
    }
    auto end = joined.find(' ', pos);
    const std::string tok = joined.substr(pos, end - pos);
    pos = end;
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-')) parse_fail(line, "bad perm token '" + tok + "'");
    const int a = parse_axis(std::string_view(tok).substr(0, tok.size() - 1), n, line);
    claim(a);
    sign[a] = tok.back() == '+' ? 1 : -1;
  }
  return SignedPermutation(image, sign);
}

}  // namespace detail

inline GroupDescription parse_group_description(std::istream& in) {
  GroupDescription out;
  struct Pending {
    std::optional<SignedPermutation> rotation;
    std::optional<DyadicVector> translation;
    int line = 0;
  };
  std::vector<Pending> gens;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto words = detail::split_words(raw);
    if (words.empty()) continue;
    const std::string& key = words[0];
    if (key == "dim") {
      if (out.dim != 0) detail::parse_fail(line, "duplicate dim line");
      if (!gens.empty()) detail::parse_fail(line, "dim must precede the generators");
      if (words.size() != 2) detail::parse_fail(line, "dim takes one value");
      const auto n = detail::parse_int(words[1]);
      if (!n || *n < 1 || *n > 64) detail::parse_fail(line, "dim must be an integer in 1..64");
      out.dim = static_cast<int>(*n);
    } else if (key == "gen") {
      if (out.dim == 0) detail::parse_fail(line, "gen before dim");
      if (words.size() != 1) detail::parse_fail(line, "gen takes no arguments");
      gens.push_back({std::nullopt, std::nullopt, line});
    } else if (key == "B") {
      if (gens.empty()) detail::parse_fail(line, "B outside a gen block");
      if (gens.back().rotation) detail::parse_fail(line, "duplicate B line");
      gens.back().rotation = detail::parse_rotation(words, out.dim, line);
    } else if (key == "b") {
      if (gens.empty()) detail::parse_fail(line, "b outside a gen block");
      if (gens.back().translation) detail::parse_fail(line, "duplicate b line");
      if (static_cast<int>(words.size()) != out.dim + 1)
        detail::parse_fail(line, "b needs " + std::to_string(out.dim) + " entries");
      DyadicVector b;
      for (std::size_t i = 1; i < words.size(); ++i) b.push_back(detail::parse_rational(words[i], line));
      gens.back().translation = std::move(b);
    } else {
      detail::parse_fail(line, "unknown keyword '" + key + "'");
    }
  }
  if (out.dim == 0) detail::parse_fail(line, "missing dim line");
  for (auto& g : gens) {
    if (!g.rotation || !g.translation) detail::parse_fail(g.line, "gen block needs both a B and a b line");
    out.generators.push_back({std::move(*g.rotation), std::move(*g.translation)});
  }
  return out;
}

inline GroupDescription parse_group_description(const std::string& text) {
  std::istringstream in(text);
  return parse_group_description(in);
}

/// Parses and validates; throws Error(Parse) or ValidationError.
inline BieberbachGroup parse_group(const std::string& text) {
  auto d = parse_group_description(text);
  return BieberbachGroup::validate(d.dim, std::move(d.generators));
}

inline BieberbachGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  auto d = parse_group_description(in);
  return BieberbachGroup::validate(d.dim, std::move(d.generators));
}

inline std::string format_rotation(const SignedPermutation& b) {
  std::string out = "B ";
  if (b.is_diagonal()) {
    out += "diag";
    for (int i = 0; i < b.dim(); ++i) out += " " + std::to_string(b.sign(i));
    return out;
  }
  out += "perm";
  for (int i = 0; i < b.dim(); ++i) {
    const int t = b.image(i);
    const std::string s = b.sign(i) > 0 ? "+" : "-";
    if (t == i) out += " " + std::to_string(i + 1) + s;
    else if (i < t) out += " (" + std::to_string(i + 1) + " " + std::to_string(t + 1) + ")" + s;
  }
  return out;
}

/// Group-file text; parse_group(format_group(g)) == g.
inline std::string format_group(const BieberbachGroup& g, const std::string& title = {}) {
  std::string out;
  if (!title.empty()) out += "# " + title + "\n";
  out += "dim " + std::to_string(g.dim()) + "\n";
  for (const auto& x : g.generators()) {
    out += "gen\n" + format_rotation(x.rotation) + "\nb";
    for (const auto& v : x.translation) out += " " + v.str();
    out += "\n";
  }
  return out;
}

}  // namespace flatpin

#endif  // FLATPIN_GROUP_FILE_HPP
