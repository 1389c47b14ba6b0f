#include <gtest/gtest.h>

#include "operlab/chiral.hpp"
#include "operlab/errors.hpp"
#include "operlab/repspace.hpp"

using namespace operlab;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

Polynomial<Rational> one(int nvars) {
  Polynomial<Rational> p;
  p[Monomial(std::size_t(nvars), 0)] = 1;
  return p;
}

}  // namespace

TEST(Chiral, HalfHalfCase) {
  const auto cfg = make_config(std::vector<Rational>{0, 1}, std::vector<Rational>{q(1, 2), q(1, 2)}, 0);
  const auto h = chiral_hecke(one(2), q(5, 3), cfg);
  // +-(y0 - y1)^2 / 8
  ASSERT_EQ(h.size(), 3u);
  const Rational s = h.at(Monomial{2, 0}) * 8;
  EXPECT_TRUE(s == 1 || s == -1);
  EXPECT_EQ(h.at(Monomial{0, 2}) * 8, s);
  EXPECT_EQ(h.at(Monomial{1, 1}) * 4, -s);
}

TEST(Chiral, RequiresIntegralR) {
  const auto bad = make_config(std::vector<Rational>{0, 1}, std::vector<Rational>{q(1, 2), q(1, 3)}, 0);
  EXPECT_THROW(chiral_r(bad), Error);
  const auto good = make_config(std::vector<Rational>{0, 1, 3}, std::vector<Rational>{q(1, 2), q(1, 3), q(7, 6)}, 1);
  EXPECT_EQ(chiral_r(good), 1);
}

TEST(Chiral, LinearInPsi) {
  const auto cfg = make_config(std::vector<Rational>{0, 1, 3}, std::vector<Rational>{q(1, 2), q(1, 3), q(7, 6)}, 1);
  Polynomial<Rational> a, b;
  a[Monomial{1, 0, 0}] = 1;
  a[Monomial{0, 1, 0}] = -1;
  b[Monomial{0, 1, 0}] = 1;
  b[Monomial{0, 0, 1}] = -1;
  auto sum = a;
  for (const auto& [m, v] : b) sum[m] += 3 * v;
  auto expected = chiral_hecke(a, q(2, 7), cfg);
  for (const auto& [m, v] : chiral_hecke(b, q(2, 7), cfg)) expected[m] += 3 * v;
  auto got = chiral_hecke(sum, q(2, 7), cfg);
  std::erase_if(expected, [](const auto& kv) { return sgn(kv.second) == 0; });
  std::erase_if(got, [](const auto& kv) { return sgn(kv.second) == 0; });
  EXPECT_EQ(got, expected);
}

TEST(Chiral, OutputIsTranslationInvariantOfDegreeNPlusR) {
  const auto cfg = make_config(std::vector<Rational>{0, 1, 3}, std::vector<Rational>{q(1, 2), q(1, 3), q(7, 6)}, 1);
  Polynomial<Rational> psi;
  psi[Monomial{1, 0, 0}] = 1;
  psi[Monomial{0, 0, 1}] = -1;
  const auto h = chiral_hecke(psi, q(-3, 2), cfg);
  ASSERT_FALSE(h.empty());
  EXPECT_TRUE(translation_invariant(h, 3));
  for (const auto& [m, v] : h) {
    if (sgn(v) == 0) continue;
    int deg = 0;
    for (int e : m) deg += e;
    EXPECT_EQ(deg, 2);
  }
}

TEST(Chiral, FactorsThroughQ) {
  const auto cfg = make_config(std::vector<Rational>{0, 2, 5}, std::vector<Rational>{q(1, 3), q(2, 3), 3}, 1);
  const auto f = chiral_factorization(cfg, {q(1, 7), q(11)});
  EXPECT_TRUE(f.exact);
  EXPECT_NE(sgn(f.kappa), 0);
  EXPECT_GT(f.checked, 0u);
}
