#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace domideal;
using testing_support::naive_dominant_set;
using testing_support::random_ideal;

namespace {

const VariableNames xyz = VariableNames::letters("xyz");
const VariableNames abcd = VariableNames::letters("abcd");

MinimalMonomialSet ideal(const char* text, const VariableNames& names) {
  return minimalize(names.size(), parse_generators(text, names));
}

std::vector<Monomial> gens(const char* text, const VariableNames& names) { return parse_generators(text, names); }

}  // namespace

TEST(Dominance, IdealExamples) {
  EXPECT_FALSE(is_dominant_ideal(ideal("x^2*y, x*z^3, y*z", xyz)));
  EXPECT_TRUE(is_dominant_ideal(ideal("x^2*y, x*z^3, y^2*z", xyz)));
  const auto K = ideal("x^2, y^2, x^3*z*y^2", xyz);
  EXPECT_EQ(K.size(), 2u);
  EXPECT_TRUE(is_dominant_ideal(K));
}

TEST(Dominance, TrivialBranches) {
  EXPECT_TRUE(is_dominant_ideal(minimalize(3, {})));
  EXPECT_TRUE(is_dominant_ideal(ideal("x*y*z", xyz)));
  // four generators in three variables
  EXPECT_FALSE(is_dominant_ideal(ideal("x^3, y^3, z^3, x*y*z", xyz)));
}

TEST(Dominance, DominantVariables) {
  const auto J = gens("x^2*y, x*z^3, y^2*z", xyz);
  EXPECT_EQ(dominant_variables(J[0], J), std::vector<std::size_t>{0});
  EXPECT_EQ(dominant_variables(J[1], J), std::vector<std::size_t>{2});
  const std::vector<Monomial> single{Monomial{2, 1, 0}};
  EXPECT_EQ(dominant_variables(single[0], single), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(dominant_variables(Monomial{1, 1, 1}, J), std::invalid_argument);
}

TEST(Dominance, DominantSets) {
  EXPECT_TRUE(is_dominant_set(gens("a*b, c*d", abcd)));
  EXPECT_TRUE(is_dominant_set(gens("a^3*b^2, b^3*c^2, a^2*c^3", abcd)));
  EXPECT_TRUE(is_dominant_set(std::vector<Monomial>{}));
  EXPECT_FALSE(is_dominant_set(gens("a*b, a*c, b*c", abcd)));
  EXPECT_THROW(is_dominant_set(gens("a*b, a*b", abcd)), std::invalid_argument);
}

TEST(Dominance, DefinitionsAgreeOnRandomIdeals) {
  Rng rng({2024, 1});
  for (std::size_t n : {3u, 4u, 5u}) {
    for (Exponent D : {3u, 5u}) {
      std::size_t checked = 0, dominant = 0;
      while (checked < 10000) {
        const auto I = random_ideal(rng, n, D, n + 2);
        if (I.size() < 2 || I.size() > n) {
          if (I.size() > n) {
            ASSERT_FALSE(is_dominant_ideal(I));
          }
          continue;
        }
        ++checked;
        const bool a = is_dominant_ideal(I);
        ASSERT_EQ(a, is_dominant_set(I.gens())) << render_ideal(I, VariableNames::indexed(n));
        ASSERT_EQ(a, naive_dominant_set(I.gens()));
        dominant += a;
      }
      // both outcomes must actually occur for the comparison to mean anything
      EXPECT_GT(dominant, 100u);
      EXPECT_LT(dominant, checked - 100);
    }
  }
}

TEST(Footprint, Basics) {
  const Monomial m{2, 3, 4};
  EXPECT_EQ(render(footprint(Monomial{2, 1, 0}, m), xyz), "y*z");
  EXPECT_TRUE(footprint(m, m).is_unit());
  EXPECT_THROW(footprint(Monomial{3, 0, 0}, m), std::invalid_argument);
  // (x^2 y^3 z^k, x^2 y^j z^4) with k < 4, j < 3
  const auto I = minimalize(3, {Monomial{2, 3, 1}, Monomial{2, 1, 4}});
  EXPECT_EQ(footprint_profile(I).render(xyz), (std::vector<std::string>{"z", "y"}));
  EXPECT_THROW(footprint_profile(minimalize(3, {})), std::invalid_argument);
}

TEST(Footprint, Order) {
  std::vector<Monomial> fs{Monomial{1, 1, 0}, Monomial{0, 0, 1}, Monomial{1, 0, 1}, Monomial{0, 1, 0},
                           Monomial{0, 1, 1}, Monomial{1, 0, 0}};
  std::sort(fs.begin(), fs.end(), footprint_less);
  std::vector<std::string> r;
  for (const auto& f : fs) r.push_back(render(f, xyz));
  EXPECT_EQ(r, (std::vector<std::string>{"z", "y", "x", "y*z", "x*z", "x*y"}));
}

TEST(Footprint, Invariants) {
  Rng rng({77, 0});
  for (int t = 0; t < 3000; ++t) {
    const auto I = random_ideal(rng, 3, 4, 3);
    const Monomial m = I.lcm();
    for (const auto& g : I) ASSERT_EQ(footprint(g, m).is_unit(), g == m);
    if (is_dominant_ideal(I) && I.size() >= 2) {
      for (const auto& g : I) ASSERT_LT(footprint(g, m).total_degree(), 3u);
    }
  }
}

TEST(LowOrMax, Signatures) {
  const auto three = minimalize(3, {Monomial{2, 1, 0}, Monomial{1, 3, 2}, Monomial{0, 0, 4}});
  EXPECT_EQ(low_or_max_signature(three).render(), (std::vector<std::string>{"l^2*m", "l^2*m", "l^2*m"}));
  EXPECT_EQ(low_or_max_signature(minimalize(3, {Monomial{2, 3, 4}})).render(), std::vector<std::string>{"m^3"});
  const auto two = minimalize(3, {Monomial{2, 3, 1}, Monomial{2, 1, 4}});
  EXPECT_EQ(low_or_max_signature(two).render(), (std::vector<std::string>{"l*m^2", "l*m^2"}));
  EXPECT_EQ(LowOrMaxSignature::render_part(3, 0), "l^3");
}

TEST(MaxDominantSubset, Examples) {
  const auto a = max_dominant_subset(gens("a^3*b^2, b^3*c^2, a^2*c^3, a*b*c", abcd));
  EXPECT_EQ(a.size, 3u);
  auto expected = gens("a^3*b^2, b^3*c^2, a^2*c^3", abcd);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(a.witness, expected);
  EXPECT_EQ(max_dominant_subset(gens("a*b, a*c, b*d, c*d", abcd)).size, 2u);
  EXPECT_EQ(max_dominant_subset(gens("x^2*y", xyz)).size, 1u);
  EXPECT_THROW(max_dominant_subset({}), std::invalid_argument);
  EXPECT_THROW(max_dominant_subset(gens("a, a", abcd)), std::invalid_argument);
}

TEST(MaxDominantSubset, FullIffDominant) {
  Rng rng({5, 5});
  for (int t = 0; t < 3000; ++t) {
    const auto I = random_ideal(rng, 4, 3, 6);
    const auto sub = max_dominant_subset(I.gens());
    ASSERT_TRUE(naive_dominant_set(sub.witness));
    ASSERT_EQ(sub.witness.size(), sub.size);
    ASSERT_EQ(sub.size == I.size(), is_dominant_set(I.gens()));
  }
}
