#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "domideal/format.hpp"
#include "domideal/monomial.hpp"

namespace domideal {

/// Variables x_i with deg_i(v) > deg_i(w) for every other w in `set`.
///
/// For a singleton set every variable in the support of v counts.
inline std::vector<std::size_t> dominant_variables(const Monomial& v, std::span<const Monomial> set) {
  if (std::find(set.begin(), set.end(), v) == set.end())
    throw std::invalid_argument("domideal: dominant_variables needs v to be a member of the set");
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < v.nvars(); ++i) {
    if (v[i] == 0) continue;
    bool strict = true;
    for (const auto& w : set) {
      if (w == v) continue;
      detail::require_same_length(v, w);
      if (w[i] >= v[i]) {
        strict = false;
        break;
      }
    }
    if (strict) vars.push_back(i);
  }
  return vars;
}

namespace detail {

inline bool has_duplicates(std::span<const Monomial> set) {
  std::vector<Monomial> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

// v dominant in `set`, skipping the duplicate check.
inline bool is_dominant_member(const Monomial& v, std::span<const Monomial> set) {
  for (std::size_t i = 0; i < v.nvars(); ++i) {
    if (v[i] == 0) continue;
    bool strict = true;
    for (const auto& w : set) {
      if (&w != &v && w[i] >= v[i]) {
        strict = false;
        break;
      }
    }
    if (strict) return true;
  }
  return false;
}

}  // namespace detail

/// Every member of `set` has a dominant variable. The empty set is dominant.
inline bool is_dominant_set(std::span<const Monomial> set) {
  if (set.empty()) return true;
  detail::require_same_length(set);
  if (detail::has_duplicates(set)) throw std::invalid_argument("domideal: dominance of a set with duplicates");
  for (const auto& v : set)
    if (!detail::is_dominant_member(v, set)) return false;
  return true;
}

/// Dominance of I via its minimal generators, by the lcm-drop test: G is
/// dominant iff removing any single generator lowers the lcm.
inline bool is_dominant_ideal(const MinimalMonomialSet& ideal) {
  const auto& g = ideal.gens();
  if (g.size() <= 1) return true;
  if (g.size() > ideal.nvars()) return false;
  const Monomial full = ideal.lcm();
  for (std::size_t skip = 0; skip < g.size(); ++skip) {
    Monomial rest = Monomial::unit(ideal.nvars());
    for (std::size_t k = 0; k < g.size(); ++k)
      if (k != skip) rest = lcm(rest, g[k]);
    if (rest == full) return false;
  }
  return true;
}

/// Squarefree monomial marking variables where g sits strictly below m.
using Footprint = Monomial;

inline Footprint footprint(const Monomial& g, const Monomial& m) {
  if (!divides(g, m)) throw std::invalid_argument("domideal: footprint needs g to divide the lcm");
  std::vector<Exponent> e(g.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = g[i] < m[i] ? 1 : 0;
  return Footprint(std::move(e));
}

/// Orders footprints by degree, then lexicographically: z < y < x < yz < xz < xy.
inline bool footprint_less(const Footprint& a, const Footprint& b) {
  const auto da = a.total_degree(), db = b.total_degree();
  return da != db ? da < db : a < b;
}

/// Sorted multiset of generator footprints of a nonzero ideal.
struct FootprintProfile {
  std::vector<Footprint> parts;

  friend bool operator==(const FootprintProfile&, const FootprintProfile&) = default;
  friend bool operator<(const FootprintProfile& a, const FootprintProfile& b) {
    return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(),
                                        footprint_less);
  }

  std::vector<std::string> render(const VariableNames& names) const {
    std::vector<std::string> out;
    for (const auto& f : parts) out.push_back(domideal::render(f, names));
    return out;
  }
};

inline FootprintProfile footprint_profile(const MinimalMonomialSet& ideal) {
  if (ideal.is_zero()) throw std::invalid_argument("domideal: footprint of the zero ideal");
  const Monomial m = ideal.lcm();
  FootprintProfile p;
  for (const auto& g : ideal) p.parts.push_back(footprint(g, m));
  std::sort(p.parts.begin(), p.parts.end(), footprint_less);
  return p;
}

/// Per generator: how many variables sit below the lcm (low) and at it (max).
struct LowOrMaxSignature {
  std::vector<std::pair<std::size_t, std::size_t>> parts;  // (low, max), sorted

  friend bool operator==(const LowOrMaxSignature&, const LowOrMaxSignature&) = default;
  friend auto operator<=>(const LowOrMaxSignature&, const LowOrMaxSignature&) = default;

  static std::string render_part(std::size_t low, std::size_t max) {
    auto factor = [](const char* sym, std::size_t k) -> std::string {
      if (k == 0) return {};
      return k == 1 ? std::string(sym) : std::string(sym) + "^" + std::to_string(k);
    };
    std::string l = factor("l", low), m = factor("m", max);
    if (l.empty()) return m.empty() ? "1" : m;
    return m.empty() ? l : l + "*" + m;
  }

  /// Labels such as "l^2*m".
  std::vector<std::string> render() const {
    std::vector<std::string> out;
    for (auto [l, m] : parts) out.push_back(render_part(l, m));
    return out;
  }
};

inline LowOrMaxSignature low_or_max_signature(const MinimalMonomialSet& ideal) {
  if (ideal.is_zero()) throw std::invalid_argument("domideal: signature of the zero ideal");
  const Monomial m = ideal.lcm();
  LowOrMaxSignature s;
  for (const auto& g : ideal) {
    std::size_t low = 0;
    for (std::size_t i = 0; i < g.nvars(); ++i)
      if (g[i] < m[i]) ++low;
    s.parts.emplace_back(low, g.nvars() - low);
  }
  std::sort(s.parts.begin(), s.parts.end());
  return s;
}

struct DominantSubset {
  std::size_t size = 0;
  std::vector<Monomial> witness;
};

/// Largest dominant subset of `gens`, by exhaustive search from the largest
/// feasible cardinality min(|G|, n) downward. The witness is the first subset
/// in lexicographic index order over the canonically sorted input.
inline DominantSubset max_dominant_subset(std::vector<Monomial> gens) {
  if (gens.empty()) throw std::invalid_argument("domideal: max_dominant_subset of an empty set");
  detail::require_same_length(gens);
  std::sort(gens.begin(), gens.end());
  if (std::adjacent_find(gens.begin(), gens.end()) != gens.end())
    throw std::invalid_argument("domideal: max_dominant_subset needs distinct monomials");
  const std::size_t top = std::min(gens.size(), gens.front().nvars());
  std::vector<Monomial> pick;
  for (std::size_t k = top; k >= 1; --k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t j = 0; j < k; ++j) idx[j] = j;
    while (true) {
      pick.clear();
      for (auto j : idx) pick.push_back(gens[j]);
      bool ok = true;
      for (const auto& v : pick)
        if (!detail::is_dominant_member(v, pick)) {
          ok = false;
          break;
        }
      if (ok) return {k, pick};
      // next k-combination of [0, |G|)
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == gens.size() - k + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  // Unreachable: a singleton of a non-unit monomial is always dominant. A unit
  // monomial singleton has no dominant variable under the support rule.
  throw std::invalid_argument("domideal: no dominant subset (unit monomial input?)");
}

}  // namespace domideal
