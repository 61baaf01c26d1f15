#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_set>
#include <variant>
#include <vector>

#include "domideal/monomial.hpp"

namespace domideal {

/// I(n, D, p): every non-constant monomial of degree <= D independently with
/// probability p.
struct BasicModel {
  std::size_t n = 1;
  std::size_t D = 1;
  double p = 0.0;
  friend bool operator==(const BasicModel&, const BasicModel&) = default;
};

/// Graded model: degree-d monomials independently with probability p[d-1].
struct GradedModel {
  std::size_t n = 1;
  std::vector<double> p;  // size D
  std::size_t D() const noexcept { return p.size(); }
  friend bool operator==(const GradedModel&, const GradedModel&) = default;
};

/// Fixed generator count: M[d-1] distinct monomials of degree d.
struct FixedCountModel {
  std::size_t n = 1;
  std::vector<std::uint64_t> M;  // size D
  std::size_t D() const noexcept { return M.size(); }
  friend bool operator==(const FixedCountModel&, const FixedCountModel&) = default;
};

using ModelSpec = std::variant<BasicModel, GradedModel, FixedCountModel>;

/// Graded spec with a single nonzero slot alpha at degree D.
inline GradedModel graded_single(std::size_t n, std::size_t D, double alpha) {
  GradedModel m{n, std::vector<double>(D, 0.0)};
  if (D) m.p.back() = alpha;
  return m;
}

/// Fixed-count spec asking for g generators of degree d only.
inline FixedCountModel fixed_count_single(std::size_t n, std::size_t d, std::uint64_t g) {
  FixedCountModel m{n, std::vector<std::uint64_t>(d, 0)};
  if (d) m.M.back() = g;
  return m;
}

inline std::size_t model_nvars(const ModelSpec& spec) {
  return std::visit([](const auto& m) { return m.n; }, spec);
}

inline std::size_t model_degree(const ModelSpec& spec) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, BasicModel>)
          return m.D;
        else
          return m.D();
      },
      spec);
}

inline const char* model_name(const ModelSpec& spec) {
  constexpr const char* names[] = {"basic", "graded", "fixed-count"};
  return names[spec.index()];
}

namespace detail {

inline bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

inline void validate_common(std::size_t n, std::size_t D) {
  if (n < 1) throw std::invalid_argument("domideal: model needs n >= 1");
  if (D < 1) throw std::invalid_argument("domideal: model needs D >= 1");
}

}  // namespace detail

inline void validate(const BasicModel& m) {
  detail::validate_common(m.n, m.D);
  if (!detail::is_probability(m.p)) throw std::invalid_argument("domideal: basic model needs p in [0,1]");
}

inline void validate(const GradedModel& m) {
  detail::validate_common(m.n, m.D());
  for (double p : m.p)
    if (!detail::is_probability(p)) throw std::invalid_argument("domideal: graded model probabilities must lie in [0,1]");
}

inline void validate(const FixedCountModel& m) {
  detail::validate_common(m.n, m.D());
  for (std::size_t d = 1; d <= m.D(); ++d)
    if (m.M[d - 1] > count_monomials(m.n, d, DegreeMode::Exact))
      throw std::invalid_argument("domideal: fixed-count model asks for " + std::to_string(m.M[d - 1]) +
                                  " generators of degree " + std::to_string(d) + " but only " +
                                  std::to_string(count_monomials(m.n, d, DegreeMode::Exact)) + " exist");
}

inline void validate(const ModelSpec& spec) {
  std::visit([](const auto& m) { validate(m); }, spec);
}

/// (seed, stream) names one sample; streams under a seed are independent.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Version tag of the seeding scheme; bump whenever sampled values change.
constexpr const char* kRngVersion = "splitmix64-mt19937_64/1";

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives a child seed, e.g. one per experiment grid point.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(key + 0xD1B54A32D192ED03ULL));
}

/// mt19937_64 keyed by (seed, stream). Uniform doubles and bounded integers
/// are computed here rather than through <random> distributions, whose output
/// differs between standard library implementations.
class Rng {
 public:
  explicit Rng(SeedSpec s) {
    std::uint64_t a = splitmix64(s.seed), b = splitmix64(s.stream ^ 0xA0761D6478BD642FULL);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }

  /// Uniform on [0, bound), bound >= 1, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("domideal: Rng::below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  /// Failures before the next success of a Bernoulli(p) sequence, 0 < p < 1.
  std::uint64_t geometric(double p) {
    const double u = 1.0 - uniform();  // (0, 1]
    const double k = std::floor(std::log(u) / std::log1p(-p));
    return k >= 1.8e19 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(k);
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

// Indices of the successes among `count` independent Bernoulli(p) trials.
// Small p jumps between successes geometrically.
inline std::vector<std::uint64_t> bernoulli_indices(Rng& rng, std::uint64_t count, double p) {
  std::vector<std::uint64_t> hits;
  if (p <= 0.0 || count == 0) return hits;
  if (p >= 1.0) {
    hits.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) hits[i] = i;
    return hits;
  }
  if (p < 0.25) {
    std::uint64_t i = 0;
    while (true) {
      const auto skip = rng.geometric(p);
      if (skip >= count - i) break;
      i += skip;
      hits.push_back(i);
      if (++i >= count) break;
    }
    return hits;
  }
  for (std::uint64_t i = 0; i < count; ++i)
    if (rng.uniform() < p) hits.push_back(i);
  return hits;
}

// g distinct values in [0, total), sorted (Floyd's algorithm).
inline std::vector<std::uint64_t> distinct_ranks(Rng& rng, std::uint64_t total, std::uint64_t g) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(g) * 2);
  for (std::uint64_t j = total - g; j < total; ++j) {
    const auto t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The raw set B before minimalization (used for distribution checks).
inline std::vector<Monomial> sample_basic_raw(const BasicModel& spec, SeedSpec seed) {
  validate(spec);
  Rng rng(seed);
  std::vector<Monomial> raw;
  // Degree slices in increasing order, ranks within a slice ascending.
  for (std::size_t d = 1; d <= spec.D; ++d) {
    const auto slice = count_monomials(spec.n, d, DegreeMode::Exact);
    for (auto r : detail::bernoulli_indices(rng, slice, spec.p)) raw.push_back(unrank_degree_monomial(spec.n, d, r));
  }
  return raw;
}

inline MinimalMonomialSet sample_basic(const BasicModel& spec, SeedSpec seed) {
  return minimalize(spec.n, sample_basic_raw(spec, seed));
}

inline std::vector<Monomial> sample_graded_raw(const GradedModel& spec, SeedSpec seed) {
  validate(spec);
  Rng rng(seed);
  std::vector<Monomial> raw;
  for (std::size_t d = 1; d <= spec.D(); ++d) {
    const auto slice = count_monomials(spec.n, d, DegreeMode::Exact);
    for (auto r : detail::bernoulli_indices(rng, slice, spec.p[d - 1]))
      raw.push_back(unrank_degree_monomial(spec.n, d, r));
  }
  return raw;
}

inline MinimalMonomialSet sample_graded(const GradedModel& spec, SeedSpec seed) {
  return minimalize(spec.n, sample_graded_raw(spec, seed));
}

/// Resample limit for fixed-count specs spanning several degrees.
constexpr int kFixedCountRetryLimit = 1000;

inline MinimalMonomialSet sample_fixed_count(const FixedCountModel& spec, SeedSpec seed) {
  validate(spec);
  Rng rng(seed);
  std::size_t active = 0;
  for (auto g : spec.M) active += g > 0;
  auto draw = [&] {
    std::vector<Monomial> raw;
    for (std::size_t d = 1; d <= spec.D(); ++d) {
      if (!spec.M[d - 1]) continue;
      const auto total = count_monomials(spec.n, d, DegreeMode::Exact);
      for (auto r : detail::distinct_ranks(rng, total, spec.M[d - 1]))
        raw.push_back(unrank_degree_monomial(spec.n, d, r));
    }
    return minimalize(spec.n, std::move(raw));
  };
  // Equal-degree distinct monomials are already minimal.
  if (active <= 1) return draw();
  for (int attempt = 0; attempt < kFixedCountRetryLimit; ++attempt) {
    auto ideal = draw();
    std::vector<std::uint64_t> per_degree(spec.D(), 0);
    for (const auto& g : ideal) ++per_degree[g.total_degree() - 1];
    if (per_degree == spec.M) return ideal;
  }
  throw std::runtime_error("domideal: fixed-count sampler gave up after " + std::to_string(kFixedCountRetryLimit) +
                           " resamples without matching the per-degree generator counts");
}

inline MinimalMonomialSet sample(const ModelSpec& spec, SeedSpec seed) {
  return std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BasicModel>)
          return sample_basic(m, seed);
        else if constexpr (std::is_same_v<T, GradedModel>)
          return sample_graded(m, seed);
        else
          return sample_fixed_count(m, seed);
      },
      spec);
}

namespace detail {

inline void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Half-gaps of the ascending sequence 1/d^n < ... < 1/d, together with
/// 0.1, ..., 0.9.
inline std::vector<double> probability_grid_basic(std::size_t n, std::size_t d) {
  if (n < 2 || d < 2) throw std::invalid_argument("domideal: probability grid needs n >= 2 and d >= 2");
  std::vector<double> powers;
  for (std::size_t x = 1; x <= n; ++x) powers.push_back(1.0 / std::pow(static_cast<double>(d), static_cast<double>(x)));
  std::sort(powers.begin(), powers.end());
  std::vector<double> grid;
  for (std::size_t i = 1; i < powers.size(); ++i) grid.push_back((powers[i] - powers[i - 1]) / 2);
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  detail::sort_unique(grid);
  return grid;
}

/// The basic grid together with x/(20d), x = 1..20.
inline std::vector<double> probability_grid_graded(std::size_t n, std::size_t d) {
  auto grid = probability_grid_basic(n, d);
  for (int x = 1; x <= 20; ++x) grid.push_back(x / (20.0 * static_cast<double>(d)));
  detail::sort_unique(grid);
  return grid;
}

}  // namespace domideal
