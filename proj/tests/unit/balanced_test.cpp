#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "operlab/balanced.hpp"
#include "operlab/errors.hpp"

using namespace operlab;

namespace {

RealPointConfig untwisted() { return RealPointConfig{{0, 1, 3}, std::vector<cplx>(4, 0.0)}; }

}  // namespace

TEST(Balanced, HalfMonodromyAtUnitLambda) {
  Mat2 expected;
  expected << cplx(0, 1), 0.0, 1.0, cplx(0, 1);
  EXPECT_LT((half_monodromy(1.0) - expected).norm(), 1e-15);
}

TEST(Balanced, AccessoryParametersSumToZero) {
  const auto mu = balanced_mu(untwisted(), 0.7);
  ASSERT_EQ(mu.size(), 3u);
  EXPECT_EQ(mu[0], cplx(0.7));
  EXPECT_LT(std::abs(mu[0] + mu[1] + mu[2]), 1e-14);
}

TEST(Balanced, UntwistedBasisIsLogarithmic) {
  const auto L = balanced_oper(untwisted(), -0.2313372251);
  EXPECT_TRUE(local_basis(L, 1, +1).logarithmic);
  const auto T = balanced_oper(RealPointConfig{{0, 1, 3}, std::vector<cplx>(4, cplx(0, 0.3))}, -0.2555121);
  EXPECT_FALSE(local_basis(T, 1, +1).logarithmic);
}

TEST(Balanced, ScanFindsFrozenHit) {
  const auto scan = find_balanced_4pt(untwisted(), -0.5, 0.0, 0.05);
  ASSERT_EQ(scan.hits.size(), 1u);
  EXPECT_NEAR(scan.hits[0], -0.2313372251, 1e-8);
  EXPECT_LE(scan.step, 0.05 / 8);
}

TEST(Balanced, HitIsBalanced) {
  const auto d = balance_check(balanced_oper(untwisted(), -0.23133722505223753));
  for (double a : d.a) EXPECT_NEAR(a, 1.0, 1e-6);
  for (const auto& iv : d.intervals) EXPECT_NEAR(iv.wronskian, std::numbers::pi, 1e-8);
  EXPECT_LT(d.product_residual, 1e-6);
}

TEST(Balanced, BadBracketThrows) {
  EXPECT_THROW(find_balanced_4pt(untwisted(), 1.0, 0.0, 0.05), Error);
}
