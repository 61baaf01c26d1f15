#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace domideal;

TEST(Format, RenderForms) {
  const Monomial m{2, 3, 4};
  EXPECT_EQ(render_tuple(m), "[2,3,4]");
  EXPECT_EQ(render(m), "x1^2*x2^3*x3^4");
  EXPECT_EQ(render(m, VariableNames::letters("xyz")), "x^2*y^3*z^4");
  EXPECT_EQ(render(Monomial::unit(2)), "1");
  EXPECT_EQ(render(Monomial{0, 1, 0}, VariableNames::letters("xyz")), "y");
}

TEST(Format, ParseForms) {
  const auto xyz = VariableNames::letters("xyz");
  EXPECT_EQ(parse_monomial("[2,3,4]", xyz), (Monomial{2, 3, 4}));
  EXPECT_EQ(parse_monomial("x1^2*x2^3*x3^4", 3), (Monomial{2, 3, 4}));
  EXPECT_EQ(parse_monomial("x^2 * y^3*z^4", xyz), (Monomial{2, 3, 4}));
  EXPECT_EQ(parse_monomial(" 1 ", xyz), Monomial::unit(3));
  EXPECT_EQ(parse_monomial("x*x*y", xyz), (Monomial{2, 1, 0}));
  EXPECT_EQ(parse_monomial("x3", xyz), (Monomial{0, 0, 1}));  // index form when not shadowed
}

TEST(Format, ParseErrors) {
  const auto xyz = VariableNames::letters("xyz");
  EXPECT_THROW(parse_monomial("", xyz), parse_error);
  EXPECT_THROW(parse_monomial("[1,2]", xyz), parse_error);
  EXPECT_THROW(parse_monomial("[1,2,3", xyz), parse_error);
  EXPECT_THROW(parse_monomial("w^2", xyz), parse_error);
  EXPECT_THROW(parse_monomial("x^", xyz), parse_error);
  EXPECT_THROW(parse_monomial("x^-1", xyz), parse_error);
  EXPECT_THROW(parse_monomial("x4", xyz), parse_error);
  EXPECT_THROW(split_generators("x, , y"), parse_error);
}

TEST(Format, RoundTrip) {
  Rng rng({3, 0});
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<Exponent> e(n);
    for (auto& x : e) x = static_cast<Exponent>(rng.below(12));
    const Monomial m(e);
    ASSERT_EQ(parse_monomial(render(m), n), m);
    ASSERT_EQ(parse_monomial(render_tuple(m), n), m);
    if (n <= 26) {
      const auto names = VariableNames::alphabet(n);
      ASSERT_EQ(parse_monomial(render(m, names), names), m);
    }
  }
}

TEST(Format, Generators) {
  EXPECT_EQ(split_generators("(x^2*y, x*z^3, y*z)"), (std::vector<std::string>{"x^2*y", "x*z^3", "y*z"}));
  EXPECT_EQ(split_generators("[1,0],[0,1]"), (std::vector<std::string>{"[1,0]", "[0,1]"}));
  EXPECT_TRUE(split_generators("()").empty());
  const auto names = *infer_letter_names("x^2*y, x*z^3, y^2*z");
  EXPECT_EQ(names.names(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_FALSE(infer_letter_names("[1,2]").has_value());
  EXPECT_FALSE(infer_letter_names("x1*x2").has_value());
  const auto I = minimalize(3, parse_generators("x^2*y, x*z^3, y*z", names));
  EXPECT_EQ(render_ideal(I, names), "(x^2*y, x*z^3, y*z)");
  EXPECT_EQ(render_ideal(minimalize(3, {}), names), "(0)");
}

TEST(Format, VariableNames) {
  EXPECT_EQ(VariableNames::from_spec("a, b ,c").names(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(VariableNames::from_spec("abc").size(), 3u);
  EXPECT_EQ(VariableNames::indexed(2)[1], "x2");
  EXPECT_THROW(VariableNames::from_spec("a,a"), std::invalid_argument);
  EXPECT_THROW(VariableNames::alphabet(27), std::invalid_argument);
  EXPECT_THROW(render(Monomial{1, 1}, VariableNames::letters("x")), std::invalid_argument);
}

TEST(Format, JsonRoundTrip) {
  const auto I = minimalize(3, {Monomial{2, 1, 0}, Monomial{1, 0, 3}, Monomial{0, 2, 1}});
  EXPECT_EQ(ideal_from_json(to_json(I)), I);
  EXPECT_EQ(ideal_from_json(json::parse("[[2,1,0],[1,0,3],[0,2,1]]")), I);
  EXPECT_EQ(to_json(I).dump(), R"({"generators":[[0,2,1],[1,0,3],[2,1,0]],"nvars":3})");
  EXPECT_THROW(ideal_from_json(json::parse(R"({"generators": 3})")), parse_error);
  EXPECT_TRUE(ideal_from_json(json::parse(R"({"nvars": 2, "generators": []})")).is_zero());
}
