#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace domideal {

using Exponent = std::uint32_t;

/// Checked arithmetic on counts. Overflow throws instead of wrapping.
namespace checked {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("domideal: count overflow in addition");
  return r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("domideal: count overflow in multiplication");
  return r;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = mul(r, base);
  return r;
}

inline Exponent add_exp(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("domideal: exponent overflow");
  return r;
}

}  // namespace checked

/// Binomial coefficient C(n, k) with overflow checking.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    const std::uint64_t g = std::gcd(r, i);
    r = checked::mul(r / g, (n - k + i) / (i / g));
  }
  return r;
}

/// A monomial x_1^{e_1} ... x_n^{e_n}, stored as its exponent vector.
///
/// The ambient variable count n is the vector length. The all-zero vector is
/// the unit monomial. Ordering is lexicographic on exponent vectors, which is
/// the canonical order used throughout the library.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial unit(std::size_t nvars) { return Monomial(nvars); }

  /// x_i^e in n variables.
  static Monomial variable_power(std::size_t nvars, std::size_t i, Exponent e = 1) {
    if (i >= nvars) throw std::out_of_range("domideal: variable index out of range");
    Monomial m(nvars);
    m.exps_[i] = e;
    return m;
  }

  std::size_t nvars() const noexcept { return exps_.size(); }

  /// Exponent of x_i, unchecked.
  Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }

  /// Highest power of x_i dividing this monomial.
  Exponent degree_in(std::size_t i) const {
    if (i >= exps_.size()) throw std::out_of_range("domideal: variable index " + std::to_string(i) +
                                                   " out of range for " + std::to_string(exps_.size()) +
                                                   " variables");
    return exps_[i];
  }

  std::span<const Exponent> exponents() const noexcept { return exps_; }
  const std::vector<Exponent>& vector() const noexcept { return exps_; }

  bool is_unit() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  std::uint64_t total_degree() const noexcept {
    std::uint64_t d = 0;
    for (Exponent e : exps_) d += e;
    return d;
  }

  /// Bitmask of the variables with positive exponent (first 64 variables).
  std::uint64_t support_mask() const noexcept {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < exps_.size() && i < 64; ++i)
      if (exps_[i] > 0) mask |= std::uint64_t{1} << i;
    return mask;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<Exponent> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull ^ m.nvars();
    for (Exponent e : m.exponents()) {
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

namespace detail {

inline void require_same_length(const Monomial& u, const Monomial& v) {
  if (u.nvars() != v.nvars())
    throw std::invalid_argument("domideal: monomials live in different rings (" + std::to_string(u.nvars()) +
                                " vs " + std::to_string(v.nvars()) + " variables)");
}

inline void require_same_length(std::span<const Monomial> list) {
  for (const auto& m : list) require_same_length(list.front(), m);
}

}  // namespace detail

/// u | v.
inline bool divides(const Monomial& u, const Monomial& v) {
  detail::require_same_length(u, v);
  for (std::size_t i = 0; i < u.nvars(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

/// Every variable in the support of u has strictly larger exponent in v.
inline bool strongly_divides(const Monomial& u, const Monomial& v) {
  detail::require_same_length(u, v);
  for (std::size_t i = 0; i < u.nvars(); ++i)
    if (u[i] > 0 && v[i] <= u[i]) return false;
  return true;
}

inline Monomial lcm(const Monomial& u, const Monomial& v) {
  detail::require_same_length(u, v);
  std::vector<Exponent> e(u.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(u[i], v[i]);
  return Monomial(std::move(e));
}

inline Monomial gcd(const Monomial& u, const Monomial& v) {
  detail::require_same_length(u, v);
  std::vector<Exponent> e(u.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(u[i], v[i]);
  return Monomial(std::move(e));
}

inline Monomial multiply(const Monomial& u, const Monomial& v) {
  detail::require_same_length(u, v);
  std::vector<Exponent> e(u.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked::add_exp(u[i], v[i]);
  return Monomial(std::move(e));
}

/// u / gcd(u, v): the generator of (u) : (v).
inline Monomial colon_generator(const Monomial& u, const Monomial& v) {
  detail::require_same_length(u, v);
  std::vector<Exponent> e(u.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = u[i] > v[i] ? u[i] - v[i] : 0;
  return Monomial(std::move(e));
}

/// Entrywise maximum. The empty list has lcm equal to the unit monomial in
/// `nvars` variables.
inline Monomial lcm_set(std::span<const Monomial> list, std::size_t nvars) {
  Monomial acc = Monomial::unit(nvars);
  for (const auto& m : list) acc = lcm(acc, m);
  return acc;
}

inline Monomial lcm_set(std::span<const Monomial> list) {
  if (list.empty()) return Monomial{};
  return lcm_set(list, list.front().nvars());
}

class MinimalMonomialSet;
MinimalMonomialSet minimalize(std::size_t nvars, std::vector<Monomial> list);

/// The minimal monomial generating set G(I) of a monomial ideal I.
///
/// Invariants: generators are strictly increasing in canonical order, pairwise
/// incomparable under divisibility, none is the unit monomial. The empty set
/// represents the zero ideal. Two ideals are equal iff their sets are equal.
class MinimalMonomialSet {
 public:
  MinimalMonomialSet() = default;
  explicit MinimalMonomialSet(std::size_t nvars) : nvars_(nvars) {}

  /// Adopts an already-canonical list after verifying every invariant.
  static MinimalMonomialSet from_canonical(std::size_t nvars, std::vector<Monomial> gens) {
    for (std::size_t a = 0; a < gens.size(); ++a) {
      if (gens[a].nvars() != nvars) throw std::invalid_argument("domideal: generator length mismatch");
      if (gens[a].is_unit()) throw std::invalid_argument("domideal: unit monomial cannot be a generator");
      if (a > 0 && !(gens[a - 1] < gens[a])) throw std::invalid_argument("domideal: generators not strictly sorted");
      for (std::size_t b = 0; b < a; ++b)
        if (divides(gens[a], gens[b]) || divides(gens[b], gens[a]))
          throw std::invalid_argument("domideal: generators are not an antichain");
    }
    MinimalMonomialSet s(nvars);
    s.gens_ = std::move(gens);
    return s;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  const std::vector<Monomial>& gens() const noexcept { return gens_; }
  const Monomial& operator[](std::size_t i) const noexcept { return gens_[i]; }
  auto begin() const noexcept { return gens_.begin(); }
  auto end() const noexcept { return gens_.end(); }

  /// lcm of the minimal generators.
  Monomial lcm() const { return lcm_set(gens_, nvars_); }

  /// v ∈ I iff some generator divides v.
  bool contains(const Monomial& v) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return divides(g, v); });
  }

  friend bool operator==(const MinimalMonomialSet&, const MinimalMonomialSet&) = default;
  friend auto operator<=>(const MinimalMonomialSet& a, const MinimalMonomialSet& b) {
    if (auto c = a.nvars_ <=> b.nvars_; c != 0) return c;
    return a.gens_ <=> b.gens_;
  }

 private:
  friend MinimalMonomialSet minimalize(std::size_t nvars, std::vector<Monomial> list);

  std::size_t nvars_ = 0;
  std::vector<Monomial> gens_;
};

struct MinimalMonomialSetHash {
  std::size_t operator()(const MinimalMonomialSet& s) const noexcept {
    std::size_t h = s.nvars();
    MonomialHash mh;
    for (const auto& g : s) h ^= mh(g) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

/// Minimal generating set of the ideal generated by `list`.
///
/// Drops duplicates and every monomial divisible by another one, then sorts
/// canonically. A unit monomial in the input is rejected: it would generate
/// the whole ring.
inline MinimalMonomialSet minimalize(std::size_t nvars, std::vector<Monomial> list) {
  for (const auto& m : list) {
    if (m.nvars() != nvars)
      throw std::invalid_argument("domideal: monomial has " + std::to_string(m.nvars()) + " variables, expected " +
                                  std::to_string(nvars));
    if (m.is_unit()) throw std::invalid_argument("domideal: unit monomial generates the whole ring");
  }
  // Sorting by total degree first means a divisor always precedes its
  // multiples, so one forward pass against the kept prefix suffices.
  std::sort(list.begin(), list.end(), [](const Monomial& a, const Monomial& b) {
    const auto da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a < b;
  });
  list.erase(std::unique(list.begin(), list.end()), list.end());
  std::vector<Monomial> kept;
  for (auto& m : list) {
    bool redundant = false;
    for (const auto& k : kept) {
      if (divides(k, m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end());
  MinimalMonomialSet s(nvars);
  s.gens_ = std::move(kept);
  return s;
}

inline MinimalMonomialSet minimalize(std::vector<Monomial> list) {
  if (list.empty()) throw std::invalid_argument("domideal: cannot infer variable count of an empty list");
  const std::size_t n = list.front().nvars();
  return minimalize(n, std::move(list));
}

/// I : (v) for a monomial v. Throws when v ∈ I since the quotient is then the
/// unit ideal, which has no representation as a minimal set.
inline MinimalMonomialSet colon_by_monomial(const MinimalMonomialSet& ideal, const Monomial& v) {
  if (ideal.is_zero()) throw std::invalid_argument("domideal: colon of the zero ideal");
  if (v.nvars() != ideal.nvars()) throw std::invalid_argument("domideal: colon monomial length mismatch");
  if (ideal.contains(v)) throw std::domain_error("domideal: v lies in I, so I:(v) is the unit ideal");
  std::vector<Monomial> q;
  q.reserve(ideal.size());
  for (const auto& u : ideal) q.push_back(colon_generator(u, v));
  return minimalize(ideal.nvars(), std::move(q));
}

enum class DegreeMode { Exact, UpTo };

/// Number of non-constant monomials in n variables of total degree exactly D
/// (C(n+D-1, D)) or in 1..D (C(n+D, D) - 1).
inline std::uint64_t count_monomials(std::size_t n, std::size_t degree, DegreeMode mode) {
  if (n < 1 || degree < 1) throw std::invalid_argument("domideal: count_monomials needs n >= 1 and D >= 1");
  if (mode == DegreeMode::Exact) return binomial(n + degree - 1, degree);
  return binomial(n + degree, degree) - 1;
}

namespace detail {

// Appends all exponent vectors of total degree `d` in ascending lex order.
inline void append_degree_slice(std::size_t n, std::size_t d, std::vector<Monomial>& out) {
  std::vector<Exponent> e(n, 0);
  // Ascending lex: the first coordinate varies slowest, starting at 0.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == n) {
      e[i] = static_cast<Exponent>(left);
      out.emplace_back(e);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      e[i] = static_cast<Exponent>(k);
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
}

}  // namespace detail

/// Non-constant monomials of total degree D (Exact) or 1..D (UpTo) in
/// ascending canonical order.
inline std::vector<Monomial> enumerate_monomials(std::size_t n, std::size_t degree, DegreeMode mode) {
  const auto total = count_monomials(n, degree, mode);
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(total));
  if (mode == DegreeMode::Exact) {
    detail::append_degree_slice(n, degree, out);
  } else {
    for (std::size_t d = 1; d <= degree; ++d) detail::append_degree_slice(n, d, out);
    std::sort(out.begin(), out.end());
  }
  return out;
}

/// The `rank`-th monomial (0-based) of exact degree D in ascending canonical
/// order, without materializing the slice.
inline Monomial unrank_degree_monomial(std::size_t n, std::size_t degree, std::uint64_t rank) {
  if (n < 1) throw std::invalid_argument("domideal: unrank needs n >= 1");
  if (rank >= binomial(n + degree - 1, degree)) throw std::out_of_range("domideal: monomial rank out of range");
  std::vector<Exponent> e(n, 0);
  std::size_t left = degree;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Block with e[i] = k holds the degree-(left-k) monomials in the remaining n-i-1 variables.
    std::size_t k = 0;
    for (;; ++k) {
      const auto block = binomial(n - i - 2 + left - k, left - k);
      if (rank < block) break;
      rank -= block;
    }
    e[i] = static_cast<Exponent>(k);
    left -= k;
  }
  e[n - 1] = static_cast<Exponent>(left);
  return Monomial(std::move(e));
}

}  // namespace domideal

template <>
struct std::hash<domideal::Monomial> : domideal::MonomialHash {};
template <>
struct std::hash<domideal::MinimalMonomialSet> : domideal::MinimalMonomialSetHash {};
