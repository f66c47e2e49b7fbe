#include "entire/laurent.hpp"

#include <complex>
#include <random>
#include <vector>

#include "entire/text.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace entire {
namespace {

using testing::random_poly;
using testing::system_of;

LaurentPoly P(const std::string& text, std::size_t nvars) { return parse_laurent(text, nvars); }

TEST(LaurentParse, SingleMonomial) {
  LaurentPoly f = P("z1^2*z2^-1", 2);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.coefficient(make_exponent({2, -1})), GaussianRational(1));
}

TEST(LaurentParse, ZeroIsEmpty) {
  LaurentPoly f = P("0", 2);
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.nvars(), 2u);
}

TEST(LaurentParse, CombinesLikeTerms) {
  // (1+2i)z1 + 3 - z1 = 2i·z1 + 3
  LaurentPoly f = P("(1+2i)*z1 + 3 - z1", 1);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.coefficient(make_exponent({1})), GaussianRational(0, 2));
  EXPECT_EQ(f.coefficient(make_exponent({0})), GaussianRational(3));
}

TEST(LaurentRing, DifferenceOfSquares) {
  EXPECT_EQ(P("z1 + 1", 1) * P("z1 - 1", 1), P("z1^2 - 1", 1));
}

TEST(LaurentRing, AdditiveInverse) {
  LaurentPoly f = P("3*z1*z2^-2 + (1-1i)", 2);
  EXPECT_TRUE((f + (-f)).is_zero());
}

TEST(LaurentRing, ScalarMultiple) {
  LaurentPoly f = LaurentPoly::monomial(make_exponent({1, 1}), Rational(1, 2));
  EXPECT_EQ(scalar_mul(2, f), LaurentPoly::monomial(make_exponent({1, 1})));
}

TEST(LaurentRing, MismatchedVariableCounts) {
  EXPECT_THROW(P("z1", 1) + P("z1", 2), DimensionMismatch);
  EXPECT_THROW(P("z1", 1) * P("z1", 2), DimensionMismatch);
}

TEST(LaurentPartial, PowerRule) {
  EXPECT_EQ(partial(P("z1^2*z2", 2), 0), P("2*z1*z2", 2));
  EXPECT_TRUE(partial(P("z2", 2), 0).is_zero());
  EXPECT_EQ(partial(P("z1^-1", 1), 0), P("-z1^-2", 1));
  EXPECT_THROW(partial(P("z1", 1), 1), std::out_of_range);
}

TEST(LaurentDivergence, Examples) {
  EXPECT_TRUE(log_divergence(system_of({"z1*z2", "-z1*z2"})).is_zero());
  EXPECT_EQ(log_divergence(system_of({"z1", "0"})), P("z1", 2));
  EXPECT_TRUE(log_divergence(system_of({"z2", "z1"})).is_zero());
}

TEST(LaurentSupport, Examples) {
  EXPECT_EQ(support(system_of({"z2", "z1"})), (std::set<Exponent>{make_exponent({0, 1}), make_exponent({1, 0})}));
  EXPECT_TRUE(support(OdeSystem::zero(2)).empty());
  EXPECT_EQ(support(system_of({"z1*z2 + 1", "z1*z2"})),
            (std::set<Exponent>{make_exponent({1, 1}), make_exponent({0, 0})}));
}

TEST(LaurentBasis, RewriteExamples) {
  HnfBasis b = hnf(IntMatrix::of({{1, 1}}));
  EXPECT_EQ(rewrite_in_basis(P("z1*z2 + z1^2*z2^2", 2), b), P("z1 + z1^2", 1));
  EXPECT_EQ(rewrite_in_basis(P("5", 2), b), P("5", 1));
  EXPECT_THROW(rewrite_in_basis(P("z1", 2), b), NotInLattice);
}

TEST(LaurentBasis, RewriteWithGeneralRows) {
  IntMatrix rows = IntMatrix::of({{2, 1}, {1, 1}});  // unimodular
  LaurentPoly f = P("z1^3*z2^2 - z2", 2);
  LaurentPoly g = rewrite_in_basis(f, rows);
  EXPECT_EQ(substitute_monomials(g, rows), f);
  EXPECT_THROW(rewrite_in_basis(P("z1", 2), IntMatrix::of({{2, 0}})), NotInLattice);
}

TEST(LaurentBasis, SubstituteExamples) {
  EXPECT_EQ(substitute_monomials(P("z1^2", 1), IntMatrix::of({{1, -1}})), P("z1^2*z2^-2", 2));
  EXPECT_EQ(substitute_monomials(P("z1*z2", 2), IntMatrix::identity(2)), P("z1*z2", 2));
  LaurentPoly f = P("z1*z2 + z1^2*z2^2", 2);
  HnfBasis b = hnf(IntMatrix::of({{1, 1}}));
  EXPECT_EQ(substitute_monomials(rewrite_in_basis(f, b), b.matrix()), f);
}

TEST(LaurentEvaluate, Examples) {
  using C = std::complex<double>;
  std::vector<C> x{2.0, 3.0};
  EXPECT_NEAR(std::abs(evaluate(P("z1*z2", 2), x) - C(6.0)), 0.0, 1e-15);
  std::vector<C> y{2.0};
  EXPECT_NEAR(std::abs(evaluate(P("z1^-1", 1), y) - C(0.5)), 0.0, 1e-15);
  std::vector<C> zero{0.0};
  EXPECT_THROW(evaluate(P("z1^-1", 1), zero), ZeroAtNegativeExponent);
  EXPECT_NEAR(std::abs(evaluate(P("z1^2", 1), zero)), 0.0, 0.0);
}

// Properties on random polynomials.

TEST(LaurentProperties, RingAxioms) {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 3;
    LaurentPoly f = random_poly(rng, n), g = random_poly(rng, n), h = random_poly(rng, n);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ(f * LaurentPoly::constant(n, 1), f);
    LaurentPoly fg = f * g;
    for (const auto& [e, c] : fg.terms()) EXPECT_FALSE(c.is_zero());
  }
}

TEST(LaurentProperties, LeibnizRule) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 3;
    LaurentPoly f = random_poly(rng, n), g = random_poly(rng, n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(partial(f * g, i), partial(f, i) * g + f * partial(g, i));
  }
}

TEST(LaurentProperties, RewriteSubstituteRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + trial % 2;
    std::size_t l = 1 + static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long long>(n) - 1));
    IntMatrix b(l, n);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = testing::uniform(rng, -3, 3);
    HnfBasis basis = hnf(b);
    LaurentPoly g = random_poly(rng, basis.rank() == 0 ? 1 : basis.rank());
    if (basis.rank() == 0) continue;
    LaurentPoly f = substitute_monomials(g, basis.matrix());
    EXPECT_EQ(substitute_monomials(rewrite_in_basis(f, basis), basis.matrix()), f);
    EXPECT_EQ(rewrite_in_basis(f, basis), g);
  }
}

TEST(LaurentProperties, DivergenceIsLinear) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 3;
    OdeSystem a = testing::random_system(rng, n), b = testing::random_system(rng, n);
    std::vector<LaurentPoly> sum;
    for (std::size_t i = 0; i < n; ++i) sum.push_back(a[i] + b[i]);
    EXPECT_EQ(log_divergence(OdeSystem(sum)), log_divergence(a) + log_divergence(b));
  }
}

TEST(LaurentProperties, EvaluateIsMultiplicative) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(0.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 3;
    LaurentPoly f = random_poly(rng, n), g = random_poly(rng, n);
    std::vector<std::complex<double>> x;
    for (std::size_t i = 0; i < n; ++i) x.emplace_back(coord(rng), coord(rng) - 1.0);
    auto lhs = evaluate(f * g, x);
    auto rhs = evaluate(f, x) * evaluate(g, x);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

}  // namespace
}  // namespace entire
