#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "domideal/dominance.hpp"
#include "domideal/lcm_enumeration.hpp"
#include "domideal/monomial.hpp"

namespace domideal {

/// Polynomial in the symbols m_1..m_n with positive integer coefficients.
class CountPolynomial {
 public:
  using Exponents = std::vector<Exponent>;

  CountPolynomial() = default;
  explicit CountPolynomial(std::size_t nvars) : nvars_(nvars) {}

  static CountPolynomial constant(std::size_t nvars, std::uint64_t c) {
    CountPolynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }

  /// m_i.
  static CountPolynomial symbol(std::size_t nvars, std::size_t i) {
    CountPolynomial p(nvars);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    p.add_term(std::move(e), 1);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Exponents, std::uint64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Exponents e, std::uint64_t coef) {
    if (e.size() != nvars_) throw std::invalid_argument("domideal: term length mismatch");
    if (coef == 0) return;
    auto& slot = terms_[std::move(e)];
    slot = checked::add(slot, coef);
  }

  std::uint64_t coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Value at a point of positive integers, with overflow checking.
  std::uint64_t evaluate(std::span<const std::uint64_t> point) const {
    if (point.size() != nvars_)
      throw std::invalid_argument("domideal: evaluation point has " + std::to_string(point.size()) +
                                  " coordinates, expected " + std::to_string(nvars_));
    std::uint64_t total = 0;
    for (const auto& [e, c] : terms_) {
      std::uint64_t v = c;
      for (std::size_t i = 0; i < nvars_; ++i) v = checked::mul(v, checked::pow(point[i], e[i]));
      total = checked::add(total, v);
    }
    return total;
  }

  friend CountPolynomial operator+(CountPolynomial a, const CountPolynomial& b) {
    a.require_compatible(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }

  friend CountPolynomial operator*(const CountPolynomial& a, const CountPolynomial& b) {
    a.require_compatible(b);
    CountPolynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked::add_exp(ea[i], eb[i]);
        out.add_term(std::move(e), checked::mul(ca, cb));
      }
    return out;
  }

  friend CountPolynomial operator*(std::uint64_t k, CountPolynomial p) {
    if (k == 0) return CountPolynomial(p.nvars_);
    for (auto& [e, c] : p.terms_) c = checked::mul(c, k);
    return p;
  }

  friend bool operator==(const CountPolynomial&, const CountPolynomial&) = default;

  /// Terms ordered by ascending total degree, then descending lex, e.g.
  /// "1 + m1*m2 + m1*m3 + m2*m3 + 3*m1*m2*m3 + m1^2*m2^2*m3^2".
  std::vector<std::pair<Exponents, std::uint64_t>> ordered_terms() const {
    std::vector<std::pair<Exponents, std::uint64_t>> v(terms_.begin(), terms_.end());
    auto deg = [](const Exponents& e) {
      std::uint64_t d = 0;
      for (auto x : e) d += x;
      return d;
    };
    std::stable_sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
      const auto da = deg(a.first), db = deg(b.first);
      return da != db ? da < db : a.first > b.first;
    });
    return v;
  }

  static std::string render_monomial(const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += "m" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : ordered_terms()) {
      if (!s.empty()) s += " + ";
      const std::string mono = render_monomial(e);
      if (mono.empty())
        s += std::to_string(c);
      else
        s += (c == 1 ? "" : std::to_string(c) + "*") + mono;
    }
    return s;
  }

 private:
  void require_compatible(const CountPolynomial& other) const {
    if (other.nvars_ != nvars_) throw std::invalid_argument("domideal: polynomials in different symbol sets");
  }

  std::size_t nvars_ = 0;
  std::map<Exponents, std::uint64_t> terms_;
};

namespace detail {

// Σ over k-subsets S of [n] of (∏_{i∈S} m_i)^power.
inline CountPolynomial subset_power_sum(std::size_t n, std::size_t k, Exponent power) {
  CountPolynomial p(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    CountPolynomial::Exponents e(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) e[i] = power;
    p.add_term(std::move(e), 1);
  }
  return p;
}

// (m_1 ... m_n)^power.
inline CountPolynomial full_product(std::size_t n, Exponent power) { return subset_power_sum(n, n, power); }

}  // namespace detail

/// Hand-entered closed-form count of dominant ideals with lcm m_1..m_n as a
/// polynomial, for n = 2..5, transcribed term by term.
inline CountPolynomial closed_form_polynomial(std::size_t n) {
  using detail::full_product;
  using detail::subset_power_sum;
  const auto one = CountPolynomial::constant(n, 1);
  switch (n) {
    case 2:
      return one + full_product(2, 1);
    case 3:
      return one + full_product(3, 2) + subset_power_sum(3, 2, 1) + 3 * full_product(3, 1);
    case 4: {
      const auto P = full_product(4, 1);
      return one + full_product(4, 3) + subset_power_sum(4, 2, 1) + 3 * subset_power_sum(4, 3, 1) + 7 * P +
             subset_power_sum(4, 3, 2) + 6 * full_product(4, 2) +
             // m1*m2^2*m3^2*m4^2 + ... = P * Σ_{i<j<k} m_i m_j m_k
             3 * (P * subset_power_sum(4, 3, 1));
    }
    case 5: {
      const auto P = full_product(5, 1);
      const auto P2 = full_product(5, 2);
      const auto quads = subset_power_sum(5, 4, 1);
      const auto quads2 = subset_power_sum(5, 4, 2);
      const auto triples = subset_power_sum(5, 3, 1);
      // Σ_i m_i Σ_{3-subsets T of [5]∖{i}} (∏_T m)^2
      CountPolynomial mixed(5);
      for (std::size_t i = 0; i < 5; ++i) {
        CountPolynomial inner(5);
        for (std::uint64_t mask = 0; mask < 32; ++mask) {
          if (std::popcount(mask) != 3 || (mask >> i & 1)) continue;
          CountPolynomial::Exponents e(5, 0);
          for (std::size_t j = 0; j < 5; ++j)
            if (mask >> j & 1) e[j] = 2;
          inner.add_term(std::move(e), 1);
        }
        mixed = mixed + CountPolynomial::symbol(5, i) * inner;
      }
      return one + full_product(5, 4) + subset_power_sum(5, 2, 1) + 3 * triples + 7 * quads + 15 * P +
             10 * full_product(5, 3) + subset_power_sum(5, 4, 3) + 6 * (P2 * quads) + 4 * (P * quads2) + 25 * P2 +
             subset_power_sum(5, 3, 2) + 6 * quads2 + 9 * (P * triples) + 18 * (P * quads) + 3 * mixed;
    }
    default:
      throw std::invalid_argument("domideal: closed-form count exists only for n = 2..5, got n = " +
                                  std::to_string(n));
  }
}

/// Closed-form count for n = 2..5.
inline std::uint64_t closed_count(const LcmTarget& target) {
  const std::size_t n = target.nvars();
  if (n < 2 || n > 5)
    throw std::invalid_argument("domideal: closed_count is defined for 2..5 variables, got " + std::to_string(n));
  std::vector<std::uint64_t> point(target.monomial().exponents().begin(), target.monomial().exponents().end());
  return closed_form_polynomial(n).evaluate(point);
}

inline std::uint64_t evaluate(const CountPolynomial& p, std::span<const std::uint64_t> point) {
  return p.evaluate(point);
}

constexpr std::size_t kMaxSymbolicVariables = 6;

/// Counting polynomial regenerated from the squarefree case: each dominant
/// ideal with lcm x_1...x_n contributes the product of its generators'
/// footprints, read as a monomial in m_1..m_n.
inline CountPolynomial symbolic_formula(std::size_t n, EnumerationOptions opts = {}) {
  if (n < 1 || n > kMaxSymbolicVariables)
    throw std::invalid_argument("domideal: symbolic_formula supports 1.." + std::to_string(kMaxSymbolicVariables) +
                                " variables, got " + std::to_string(n));
  const LcmTarget target(Monomial(std::vector<Exponent>(n, 1)));
  detail::DominantLcmSearch search(target);
  auto parts = detail::run_partitioned<CountPolynomial>(
      search, opts, [&](CountPolynomial& acc, std::span<const std::uint32_t> ids) {
        if (acc.nvars() != n) acc = CountPolynomial(n);
        CountPolynomial::Exponents e(n, 0);
        for (auto id : ids) {
          const auto& g = search.candidate(id);
          for (std::size_t i = 0; i < n; ++i)
            if (g[i] < 1) ++e[i];
        }
        acc.add_term(std::move(e), 1);
      });
  CountPolynomial total(n);
  for (const auto& p : parts)
    if (p.nvars() == n) total = total + p;
  return total;
}

struct TermDifference {
  CountPolynomial::Exponents term;
  std::uint64_t printed = 0;
  std::uint64_t regenerated = 0;
};

/// Terms on which the closed form and the regenerated polynomial disagree.
inline std::vector<TermDifference> diff_terms(const CountPolynomial& printed, const CountPolynomial& regenerated) {
  std::map<CountPolynomial::Exponents, TermDifference> diffs;
  for (const auto& [e, c] : printed.terms()) diffs[e] = {e, c, regenerated.coefficient(e)};
  for (const auto& [e, c] : regenerated.terms())
    if (!diffs.count(e)) diffs[e] = {e, 0, c};
  std::vector<TermDifference> out;
  for (auto& [e, d] : diffs)
    if (d.printed != d.regenerated) out.push_back(d);
  return out;
}

struct FormulaComparison {
  std::optional<std::uint64_t> formula;  // closed form, n = 2..5 only
  std::uint64_t symbolic = 0;
  std::uint64_t enumeration = 0;
  bool agree = false;
  std::vector<TermDifference> differing_terms;  // closed form vs regenerated polynomial
};

/// Cross-checks every available counting route at one target. Disagreement is
/// reported, never thrown.
inline FormulaComparison compare_formula_vs_enumeration(const LcmTarget& target, EnumerationOptions opts = {}) {
  const std::size_t n = target.nvars();
  FormulaComparison r;
  std::vector<std::uint64_t> point(target.monomial().exponents().begin(), target.monomial().exponents().end());
  const auto regenerated = symbolic_formula(n, opts);
  r.symbolic = regenerated.evaluate(point);
  r.enumeration = count_dominant_with_lcm(target, opts);
  r.agree = r.symbolic == r.enumeration;
  if (n >= 2 && n <= 5) {
    const auto printed = closed_form_polynomial(n);
    r.formula = printed.evaluate(point);
    r.agree = r.agree && *r.formula == r.enumeration;
    r.differing_terms = diff_terms(printed, regenerated);
  }
  return r;
}

}  // namespace domideal
