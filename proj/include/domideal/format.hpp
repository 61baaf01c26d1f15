#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "domideal/monomial.hpp"

namespace domideal {

/// Thrown on malformed monomial or ideal text.
class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Display names for the ring variables, index i ↦ names[i].
class VariableNames {
 public:
  VariableNames() = default;
  explicit VariableNames(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw std::invalid_argument("domideal: duplicate variable names");
  }

  /// x1, ..., xn.
  static VariableNames indexed(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return VariableNames(std::move(v));
  }

  /// One name per character, e.g. "xyz" or "abcd".
  static VariableNames letters(std::string_view chars) {
    std::vector<std::string> v;
    for (char c : chars) v.emplace_back(1, c);
    return VariableNames(std::move(v));
  }

  /// a, b, c, ... for n <= 26.
  static VariableNames alphabet(std::size_t n) {
    if (n > 26) throw std::invalid_argument("domideal: single-letter names need n <= 26");
    return letters(std::string_view("abcdefghijklmnopqrstuvwxyz").substr(0, n));
  }

  /// Comma-separated list "x,y,z", or a bare run of letters "xyz".
  static VariableNames from_spec(std::string_view spec) {
    if (spec.find(',') == std::string_view::npos) return letters(spec);
    std::vector<std::string> v;
    std::size_t start = 0;
    while (start <= spec.size()) {
      auto comma = spec.find(',', start);
      auto tok = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      std::string t(tok);
      t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
      if (t.empty()) throw std::invalid_argument("domideal: empty variable name");
      v.push_back(std::move(t));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return VariableNames(std::move(v));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

 private:
  std::vector<std::string> names_;
};

/// "[2,3,4]".
inline std::string render_tuple(const Monomial& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (i) s += ',';
    s += std::to_string(m[i]);
  }
  return s + "]";
}

/// "x1^2*x2^3*x3^4"; the unit monomial renders as "1".
inline std::string render(const Monomial& m, const VariableNames& names) {
  if (names.size() < m.nvars()) throw std::invalid_argument("domideal: not enough variable names");
  std::string s;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += names[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string render(const Monomial& m) { return render(m, VariableNames::indexed(m.nvars())); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline Exponent parse_exponent(std::string_view s, std::string_view context) {
  s = trim(s);
  Exponent e{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), e);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error("domideal: bad exponent '" + std::string(s) + "' in '" + std::string(context) + "'");
  return e;
}

// Index form "x<k>" (1-based), accepted whenever it is not shadowed by a name.
inline std::optional<std::size_t> indexed_variable(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'x') return std::nullopt;
  std::size_t k{};
  auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), k);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || k == 0) return std::nullopt;
  return k - 1;
}

}  // namespace detail

/// Parses "[2,3,4]", "x1^2*x2^3*x3^4", "x^2*y" (with matching names) or "1".
///
/// `names` fixes the variable count; named variables take precedence over the
/// x<k> index form.
inline Monomial parse_monomial(std::string_view text, const VariableNames& names) {
  const std::string_view s = detail::trim(text);
  const std::size_t n = names.size();
  if (s.empty()) throw parse_error("domideal: empty monomial");
  if (s.front() == '[') {
    if (s.back() != ']') throw parse_error("domideal: unterminated exponent tuple '" + std::string(s) + "'");
    std::vector<Exponent> e;
    auto body = s.substr(1, s.size() - 2);
    if (!detail::trim(body).empty()) {
      std::size_t start = 0;
      while (true) {
        auto comma = body.find(',', start);
        e.push_back(detail::parse_exponent(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start), s));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    if (e.size() != n)
      throw parse_error("domideal: tuple '" + std::string(s) + "' has " + std::to_string(e.size()) +
                        " entries, expected " + std::to_string(n));
    return Monomial(std::move(e));
  }
  std::vector<Exponent> e(n, 0);
  if (s == "1") return Monomial(std::move(e));
  std::size_t start = 0;
  while (true) {
    auto star = s.find('*', start);
    auto factor = detail::trim(s.substr(start, star == std::string_view::npos ? s.npos : star - start));
    auto caret = factor.find('^');
    auto name = detail::trim(factor.substr(0, caret));
    Exponent power = caret == std::string_view::npos ? 1 : detail::parse_exponent(factor.substr(caret + 1), s);
    std::optional<std::size_t> idx = names.index_of(name);
    if (!idx) idx = detail::indexed_variable(name);
    if (!idx || *idx >= n)
      throw parse_error("domideal: unknown variable '" + std::string(name) + "' in '" + std::string(s) + "'");
    e[*idx] = checked::add_exp(e[*idx], power);
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return Monomial(std::move(e));
}

inline Monomial parse_monomial(std::string_view text, std::size_t nvars) {
  return parse_monomial(text, VariableNames::indexed(nvars));
}

/// Splits "g1, g2, ..." at top-level commas (commas inside [...] belong to
/// tuples). Optional surrounding parentheses are stripped.
inline std::vector<std::string> split_generators(std::string_view text) {
  auto s = detail::trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = detail::trim(s.substr(1, s.size() - 2));
  std::vector<std::string> out;
  if (s.empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '[') ++depth;
    if (i < s.size() && s[i] == ']') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      auto tok = detail::trim(s.substr(start, i - start));
      if (tok.empty()) throw parse_error("domideal: empty generator in '" + std::string(s) + "'");
      out.emplace_back(tok);
      start = i + 1;
    }
  }
  return out;
}

inline std::vector<Monomial> parse_generators(std::string_view text, const VariableNames& names) {
  std::vector<Monomial> gens;
  for (const auto& tok : split_generators(text)) gens.push_back(parse_monomial(tok, names));
  return gens;
}

/// Guesses names from the text: single letters used in the input, sorted
/// alphabetically. Returns nullopt when the text uses tuples or x<k> tokens.
inline std::optional<VariableNames> infer_letter_names(std::string_view text) {
  std::set<char> letters;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[') return std::nullopt;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const bool next_alnum = i + 1 < text.size() && std::isalnum(static_cast<unsigned char>(text[i + 1]));
      const bool prev_alnum = i > 0 && std::isalnum(static_cast<unsigned char>(text[i - 1]));
      if (next_alnum || prev_alnum) return std::nullopt;
      letters.insert(c);
    }
  }
  if (letters.empty()) return std::nullopt;
  return VariableNames::letters(std::string(letters.begin(), letters.end()));
}

/// "(x^2*y, x*z^3, y*z)": generators in descending lex order, which reads
/// naturally; "(0)" for the zero ideal.
inline std::string render_ideal(const MinimalMonomialSet& ideal, const VariableNames& names) {
  if (ideal.is_zero()) return "(0)";
  std::string s = "(";
  for (std::size_t i = ideal.size(); i-- > 0;) {
    if (i + 1 != ideal.size()) s += ", ";
    s += render(ideal[i], names);
  }
  return s + ")";
}

}  // namespace domideal
