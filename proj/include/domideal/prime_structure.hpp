#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "domideal/dominance.hpp"
#include "domideal/monomial.hpp"

namespace domideal {

/// Certificate that I has an associated prime of height k = |gens|.
///
/// gens[j] is dominant in variable vars[j] within gens, every generator of I
/// outside gens reaches deg_{vars[t]}(gens[t]) for some t, and annihilated is
/// lcm(gens) with each vars[j] exponent lowered by one, so that
/// I : (annihilated) = (x_{vars[0]}, ..., x_{vars[k-1]}).
struct DominatingWitness {
  std::vector<Monomial> gens;
  std::vector<std::size_t> vars;
  Monomial annihilated;
};

namespace detail {

// Calls f(indices) for every k-subset of [0, size) in lexicographic order
// until f returns true.
inline bool for_each_subset(std::size_t size, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > size) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j;
  while (true) {
    if (f(idx)) return true;
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == size - k + j - 1) --j;
    if (j == 0) return false;
    ++idx[j - 1];
    for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

// Backtracks over injective choices vars[j] ∈ options[j]; f decides on full
// assignments and stops the search by returning true.
inline bool for_each_assignment(const std::vector<std::vector<std::size_t>>& options, std::vector<std::size_t>& vars,
                                std::size_t j, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (j == options.size()) return f(vars);
  for (auto v : options[j]) {
    if (std::find(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(j), v) != vars.begin() + static_cast<std::ptrdiff_t>(j))
      continue;
    vars[j] = v;
    if (for_each_assignment(options, vars, j + 1, f)) return true;
  }
  return false;
}

inline void require_nonzero(const MinimalMonomialSet& ideal) {
  if (ideal.is_zero()) throw std::invalid_argument("domideal: operation needs a nonzero ideal");
}

}  // namespace detail

/// First dominating witness of size k, searching generator subsets in
/// canonical order and dominant-variable assignments by backtracking.
inline std::optional<DominatingWitness> dominating_witness(const MinimalMonomialSet& ideal, std::size_t k) {
  detail::require_nonzero(ideal);
  const std::size_t n = ideal.nvars();
  if (k < 1 || k > n) throw std::out_of_range("domideal: witness size k must lie in 1..n");
  const auto& g = ideal.gens();
  std::optional<DominatingWitness> found;
  detail::for_each_subset(g.size(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<Monomial> sub;
    for (auto i : idx) sub.push_back(g[i]);
    std::vector<std::vector<std::size_t>> options;
    for (const auto& u : sub) {
      options.push_back(dominant_variables(u, sub));
      if (options.back().empty()) return false;
    }
    std::vector<bool> inside(g.size(), false);
    for (auto i : idx) inside[i] = true;
    std::vector<std::size_t> vars(k);
    return detail::for_each_assignment(options, vars, 0, [&](const std::vector<std::size_t>& a) {
      for (std::size_t w = 0; w < g.size(); ++w) {
        if (inside[w]) continue;
        bool covered = false;
        for (std::size_t t = 0; t < k && !covered; ++t) covered = g[w][a[t]] >= sub[t][a[t]];
        if (!covered) return false;
      }
      std::vector<Exponent> e(lcm_set(sub, n).vector());
      for (auto v : a) --e[v];
      found = DominatingWitness{sub, a, Monomial(std::move(e))};
      return true;
    });
  });
  return found;
}

inline bool has_associated_prime_of_height(const MinimalMonomialSet& ideal, std::size_t k) {
  return dominating_witness(ideal, k).has_value();
}

/// Heights k in 1..n for which a dominating witness exists.
inline std::set<std::size_t> associated_prime_heights(const MinimalMonomialSet& ideal) {
  detail::require_nonzero(ideal);
  std::set<std::size_t> heights;
  for (std::size_t k = 1; k <= ideal.nvars(); ++k)
    if (has_associated_prime_of_height(ideal, k)) heights.insert(k);
  return heights;
}

/// Re-verifies every witness invariant, including I : (annihilated) being
/// generated by exactly the assigned variables.
inline bool verify_witness(const MinimalMonomialSet& ideal, const DominatingWitness& w) {
  const std::size_t k = w.gens.size();
  if (w.vars.size() != k || k == 0) return false;
  for (const auto& u : w.gens)
    if (!std::binary_search(ideal.begin(), ideal.end(), u)) return false;
  for (std::size_t j = 0; j < k; ++j) {
    const auto dv = dominant_variables(w.gens[j], w.gens);
    if (std::find(dv.begin(), dv.end(), w.vars[j]) == dv.end()) return false;
  }
  std::vector<Exponent> e(lcm_set(w.gens, ideal.nvars()).vector());
  for (auto v : w.vars) {
    if (e[v] == 0) return false;
    --e[v];
  }
  if (Monomial(e) != w.annihilated || ideal.contains(w.annihilated)) return false;
  std::vector<Monomial> expected;
  for (auto v : w.vars) expected.push_back(Monomial::variable_power(ideal.nvars(), v));
  return colon_by_monomial(ideal, w.annihilated) == minimalize(ideal.nvars(), std::move(expected));
}

/// Largest divisor-lattice size associated_primes_oracle agrees to scan.
constexpr std::uint64_t kOracleScanLimit = 1'000'000;

/// Associated primes by brute force: every monomial v dividing lcm(G(I)) with
/// v ∉ I, keeping the quotients I : (v) generated by variables alone. Each
/// prime is returned as its sorted list of variable indices.
inline std::set<std::vector<std::size_t>> associated_primes_oracle(const MinimalMonomialSet& ideal) {
  detail::require_nonzero(ideal);
  const Monomial top = ideal.lcm();
  const std::size_t n = ideal.nvars();
  std::uint64_t lattice = 1;
  for (std::size_t i = 0; i < n; ++i) {
    lattice = checked::mul(lattice, std::uint64_t{top[i]} + 1);
    if (lattice > kOracleScanLimit)
      throw std::length_error("domideal: associated_primes_oracle instance too large (more than " +
                              std::to_string(kOracleScanLimit) + " divisors of the lcm)");
  }
  std::set<std::vector<std::size_t>> primes;
  std::vector<Exponent> e(n, 0);
  while (true) {
    const Monomial v(e);
    if (!ideal.contains(v)) {
      const auto q = colon_by_monomial(ideal, v);
      bool linear = true;
      std::vector<std::size_t> vars;
      for (const auto& gen : q) {
        if (gen.total_degree() != 1) {
          linear = false;
          break;
        }
        for (std::size_t i = 0; i < n; ++i)
          if (gen[i]) vars.push_back(i);
      }
      if (linear) {
        std::sort(vars.begin(), vars.end());
        primes.insert(vars);
      }
    }
    std::size_t i = n;
    while (i > 0 && e[i - 1] == top[i - 1]) e[--i] = 0;
    if (i == 0) break;
    ++e[i - 1];
  }
  return primes;
}

/// pd(S/I) = n criterion: G(I) contains a dominant subset L of size n such
/// that no generator strongly divides lcm(L).
inline bool pdim_is_max(const MinimalMonomialSet& ideal) {
  detail::require_nonzero(ideal);
  const auto& g = ideal.gens();
  const std::size_t n = ideal.nvars();
  return detail::for_each_subset(g.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<Monomial> sub;
    for (auto i : idx) sub.push_back(g[i]);
    if (!is_dominant_set(sub)) return false;
    const Monomial top = lcm_set(sub, n);
    return std::none_of(g.begin(), g.end(), [&](const Monomial& w) { return strongly_divides(w, top); });
  });
}

/// Upper bound k on pd(S/I) from localizing at the non-dominant variables:
/// returned when some maximum-size dominant subset L has no dominant variable
/// dividing a generator outside L. A heuristic bound; nullopt when no subset
/// qualifies.
inline std::optional<std::size_t> localization_pdim_bound(const MinimalMonomialSet& ideal) {
  detail::require_nonzero(ideal);
  const auto& g = ideal.gens();
  const std::size_t k = max_dominant_subset(g).size;
  const bool ok = detail::for_each_subset(g.size(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<Monomial> sub;
    for (auto i : idx) sub.push_back(g[i]);
    if (!is_dominant_set(sub)) return false;
    std::vector<bool> dominant_var(ideal.nvars(), false), inside(g.size(), false);
    for (const auto& u : sub)
      for (auto v : dominant_variables(u, sub)) dominant_var[v] = true;
    for (auto i : idx) inside[i] = true;
    for (std::size_t w = 0; w < g.size(); ++w) {
      if (inside[w]) continue;
      for (std::size_t v = 0; v < ideal.nvars(); ++v)
        if (dominant_var[v] && g[w][v] > 0) return false;
    }
    return true;
  });
  return ok ? std::optional<std::size_t>(k) : std::nullopt;
}

}  // namespace domideal
