#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"

using namespace domideal;

namespace {

// mean and standard error of the raw generator count over N draws
struct Moments {
  double mean = 0;
  double se = 0;
};

template <class Draw>
Moments moments(std::size_t N, Draw draw) {
  double s = 0, s2 = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const double x = static_cast<double>(draw(i));
    s += x;
    s2 += x * x;
  }
  const double mean = s / static_cast<double>(N);
  const double var = s2 / static_cast<double>(N) - mean * mean;
  return {mean, std::sqrt(var / static_cast<double>(N))};
}

void expect_near_basic_mean(std::size_t n, std::size_t D, double p, std::uint64_t seed) {
  const BasicModel spec{n, D, p};
  const double total = static_cast<double>(count_monomials(n, D, DegreeMode::UpTo));
  const auto m = moments(10000, [&](std::size_t i) { return sample_basic_raw(spec, {seed, i}).size(); });
  const double expected = p * total;
  const double sd = std::sqrt(total * p * (1 - p) / 10000.0);
  EXPECT_LE(std::abs(m.mean - expected), 3 * sd) << n << ' ' << D << ' ' << p << " mean " << m.mean;
}

}  // namespace

TEST(Rng, Deterministic) {
  Rng a({11, 0}), b({11, 0}), c({11, 1}), d({12, 0});
  std::vector<std::uint64_t> xa, xb, xc, xd;
  for (int i = 0; i < 16; ++i) {
    xa.push_back(a.next());
    xb.push_back(b.next());
    xc.push_back(c.next());
    xd.push_back(d.next());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
  EXPECT_NE(xa, xd);
}

TEST(Rng, Ranges) {
  Rng rng({1, 2});
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.below(7), 7u);
  }
  EXPECT_THROW(rng.below(0), std::invalid_argument);
  EXPECT_FALSE(rng.bernoulli(0.0));
  EXPECT_TRUE(rng.bernoulli(1.0));
}

TEST(Rng, DistinctRanks) {
  Rng rng({5, 0});
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t total = 1 + rng.below(40);
    const std::uint64_t g = rng.below(total + 1);
    const auto r = detail::distinct_ranks(rng, total, g);
    ASSERT_EQ(r.size(), g);
    ASSERT_TRUE(std::is_sorted(r.begin(), r.end()));
    ASSERT_EQ(std::adjacent_find(r.begin(), r.end()), r.end());
    if (g) {
      ASSERT_LT(r.back(), total);
    }
  }
}

TEST(BernoulliIndices, SparseAndDenseAgreeInMean) {
  // the geometric skip path (p < 0.25) and the direct path
  for (double p : {0.01, 0.1, 0.3, 0.7}) {
    Rng rng({21, 0});
    const auto m = moments(4000, [&](std::size_t) { return detail::bernoulli_indices(rng, 500, p).size(); });
    EXPECT_LE(std::abs(m.mean - 500 * p), 3 * std::sqrt(500 * p * (1 - p) / 4000.0)) << p;
  }
  Rng rng({22, 0});
  const auto all = detail::bernoulli_indices(rng, 5, 1.0);
  EXPECT_EQ(all, (std::vector<std::uint64_t>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(detail::bernoulli_indices(rng, 5, 0.0).empty());
}

TEST(BasicModel, Extremes) {
  EXPECT_TRUE(sample_basic({3, 4, 0.0}, {1, 0}).is_zero());
  const auto I = sample_basic({3, 4, 1.0}, {1, 0});
  EXPECT_EQ(I.gens(), (std::vector<Monomial>{Monomial{0, 0, 1}, Monomial{0, 1, 0}, Monomial{1, 0, 0}}));
  EXPECT_EQ(sample_basic_raw({3, 2, 1.0}, {1, 0}).size(), 9u);
}

TEST(BasicModel, Validation) {
  EXPECT_THROW(sample_basic({0, 2, 0.5}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(sample_basic({3, 0, 0.5}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(sample_basic({3, 2, 1.5}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(sample_basic({3, 2, -0.1}, {1, 0}), std::invalid_argument);
}

TEST(BasicModel, RawGeneratorsAreDistinctAndInRange) {
  const BasicModel spec{4, 3, 0.4};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto raw = sample_basic_raw(spec, {7, i});
    std::set<Monomial> seen(raw.begin(), raw.end());
    ASSERT_EQ(seen.size(), raw.size());
    for (const auto& m : raw) {
      ASSERT_GE(m.total_degree(), 1u);
      ASSERT_LE(m.total_degree(), 3u);
    }
  }
}

TEST(BasicModel, MeanGeneratorCount) {
  expect_near_basic_mean(3, 2, 0.5, 100);
  expect_near_basic_mean(3, 5, 0.1, 101);
  expect_near_basic_mean(4, 3, 0.25, 102);
}

TEST(BasicModel, SameSeedSameIdeal) {
  const BasicModel spec{3, 6, 0.2};
  EXPECT_EQ(sample_basic(spec, {9, 4}), sample_basic(spec, {9, 4}));
  std::size_t differ = 0;
  for (std::uint64_t i = 0; i < 20; ++i) differ += sample_basic(spec, {9, i}) != sample_basic(spec, {9, i + 1});
  EXPECT_GT(differ, 10u);
}

TEST(GradedModel, SingleDegree) {
  const auto spec = graded_single(3, 5, 0.3);
  EXPECT_EQ(spec.D(), 5u);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto I = sample_graded(spec, {3, i});
    for (const auto& g : I) ASSERT_EQ(g.total_degree(), 5u);
    ASSERT_EQ(I.size(), sample_graded_raw(spec, {3, i}).size());
  }
  const auto m = moments(10000, [&](std::size_t i) { return sample_graded_raw(spec, {4, i}).size(); });
  EXPECT_LE(std::abs(m.mean - 21 * 0.3), 3 * std::sqrt(21 * 0.3 * 0.7 / 10000.0));
}

TEST(GradedModel, MixedDegrees) {
  const GradedModel spec{2, {0.0, 1.0, 0.5}};
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto raw = sample_graded_raw(spec, {5, i});
    std::size_t deg2 = 0;
    for (const auto& m : raw) {
      ASSERT_NE(m.total_degree(), 1u);
      deg2 += m.total_degree() == 2;
    }
    ASSERT_EQ(deg2, 3u);
  }
  EXPECT_THROW(sample_graded(GradedModel{2, {}}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(sample_graded(GradedModel{2, {0.5, 2.0}}, {1, 0}), std::invalid_argument);
}

TEST(FixedCountModel, ExactCount) {
  const auto spec = fixed_count_single(3, 4, 5);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto I = sample_fixed_count(spec, {6, i});
    ASSERT_EQ(I.size(), 5u);
    for (const auto& g : I) ASSERT_EQ(g.total_degree(), 4u);
  }
}

TEST(FixedCountModel, Boundaries) {
  EXPECT_TRUE(sample_fixed_count(fixed_count_single(3, 2, 0), {1, 0}).is_zero());
  // the whole slice
  EXPECT_EQ(sample_fixed_count(fixed_count_single(3, 2, 6), {1, 0}).size(), 6u);
  EXPECT_THROW(sample_fixed_count(fixed_count_single(3, 2, 7), {1, 0}), std::invalid_argument);
  EXPECT_THROW(sample_fixed_count(FixedCountModel{3, {}}, {1, 0}), std::invalid_argument);
}

TEST(FixedCountModel, MixedDegreesResample) {
  const FixedCountModel spec{3, {1, 0, 2}};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto I = sample_fixed_count(spec, {8, i});
    std::size_t d1 = 0, d3 = 0;
    for (const auto& g : I) (g.total_degree() == 1 ? d1 : d3)++;
    ASSERT_EQ(d1, 1u);
    ASSERT_EQ(d3, 2u);
  }
  // three linear forms swallow every cubic
  EXPECT_THROW(sample_fixed_count(FixedCountModel{3, {3, 0, 1}}, {1, 0}), std::runtime_error);
}

TEST(ProbabilityGrid, ExactValues) {
  const auto g = probability_grid_basic(3, 10);
  const std::vector<double> expected{0.0045, 0.045, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  ASSERT_EQ(g.size(), expected.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], expected[i], 1e-12);
  const auto g2 = probability_grid_basic(2, 2);
  const std::vector<double> e2{0.1, 0.125, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  ASSERT_EQ(g2.size(), e2.size());
  for (std::size_t i = 0; i < g2.size(); ++i) EXPECT_NEAR(g2[i], e2[i], 1e-12);
  EXPECT_THROW(probability_grid_basic(1, 5), std::invalid_argument);
  EXPECT_THROW(probability_grid_basic(3, 1), std::invalid_argument);
}

TEST(ProbabilityGrid, GradedExtendsBasic) {
  const auto basic = probability_grid_basic(3, 10);
  const auto graded = probability_grid_graded(3, 10);
  EXPECT_TRUE(std::is_sorted(graded.begin(), graded.end()));
  EXPECT_EQ(std::adjacent_find(graded.begin(), graded.end()), graded.end());
  for (double p : basic) EXPECT_TRUE(std::find(graded.begin(), graded.end(), p) != graded.end()) << p;
  for (int x = 1; x <= 20; ++x) {
    const double v = x / 200.0;
    EXPECT_TRUE(std::any_of(graded.begin(), graded.end(), [&](double q) { return std::abs(q - v) < 1e-15; })) << v;
  }
  EXPECT_GT(graded.back(), 0.0);
  EXPECT_LT(graded.back(), 1.0);
}

TEST(ModelSpec, JsonRoundTrip) {
  const std::vector<ModelSpec> specs{BasicModel{3, 10, 0.25}, GradedModel{4, {0, 0, 0.5}},
                                     FixedCountModel{3, {0, 2, 1}}};
  for (const auto& s : specs) {
    EXPECT_EQ(model_from_json(to_json(s)), s);
    EXPECT_EQ(model_from_json(json::parse(to_json(s).dump())), s);
  }
  EXPECT_EQ(std::string(model_name(specs[2])), "fixed-count");
  EXPECT_EQ(model_nvars(specs[1]), 4u);
  EXPECT_EQ(model_degree(specs[1]), 3u);
  EXPECT_THROW(model_from_json(json::parse(R"({"model":"basic","n":3,"D":2,"p":3})")), std::invalid_argument);
}

TEST(Sample, DispatchMatchesDirectCalls) {
  const SeedSpec s{31, 2};
  EXPECT_EQ(sample(ModelSpec{BasicModel{3, 4, 0.3}}, s), sample_basic({3, 4, 0.3}, s));
  EXPECT_EQ(sample(ModelSpec{graded_single(3, 4, 0.3)}, s), sample_graded(graded_single(3, 4, 0.3), s));
  EXPECT_EQ(sample(ModelSpec{fixed_count_single(3, 4, 2)}, s), sample_fixed_count(fixed_count_single(3, 4, 2), s));
}

TEST(Seeds, DeriveSeedSpreads) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(1, k));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
}
