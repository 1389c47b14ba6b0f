#include <gtest/gtest.h>

#include "operlab/repspace.hpp"

using namespace operlab;

namespace {

Polynomial<Rational> sum_derivative(const Polynomial<Rational>& p, int nvars) {
  Polynomial<Rational> acc;
  for (int i = 0; i < nvars; ++i) add_into(acc, apply_generator(Generator::E, i, Rational(0), p), Rational(1));
  return acc;
}

bool is_zero_poly(const Polynomial<Rational>& p) {
  for (const auto& [m, c] : p)
    if (sgn(c) != 0) return false;
  return true;
}

}  // namespace

TEST(RepSpace, MonomialOrder) {
  const auto ms = monomials_of_degree(3, 2);
  ASSERT_EQ(ms.size(), 6u);
  EXPECT_EQ(ms.front(), (Monomial{2, 0, 0}));
  EXPECT_EQ(ms.back(), (Monomial{0, 0, 2}));
  EXPECT_EQ(monomials_up_to(2, 2).size(), 6u);
}

TEST(RepSpace, CapsRestrictMonomials) {
  const auto ms = monomials_of_degree(2, 2, std::vector<int>{1, 1});
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms.front(), (Monomial{1, 1}));
}

TEST(RepSpace, Binomial) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(7, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
}

// Translation-invariant polynomials in m+1 variables are polynomials in m differences.
TEST(RepSpace, UncappedSectorDimension) {
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(long(build_sector(m, n).dim()), binomial(n + m - 1, m - 1)) << m << "," << n;
}

TEST(RepSpace, SectorBasisIsTranslationInvariant) {
  const auto s = build_sector(3, 2);
  for (std::size_t k = 0; k < s.dim(); ++k)
    EXPECT_TRUE(is_zero_poly(sum_derivative(s.basis_polynomial<Rational>(k), 4)));
}

TEST(RepSpace, CappedFixtureSector) {
  const auto c = make_config(std::vector<Rational>{0, 1, 2}, std::vector<Rational>{1, 1, 1}, 1);
  EXPECT_EQ(build_sector(c, true).dim(), 2u);
  // V_1 appears twice in V_1^{x3}.
}

TEST(RepSpace, CoordinatesRoundTrip) {
  const auto s = build_sector(2, 3);
  std::vector<Rational> coords;
  for (std::size_t k = 0; k < s.dim(); ++k) coords.emplace_back(int(k) + 1, 3);
  EXPECT_EQ(s.coordinates(s.polynomial(coords)), coords);
}

// [e, f] = h on a module of weight lambda.
TEST(RepSpace, Sl2Relations) {
  const Rational lambda(5, 3);
  Polynomial<Rational> p;
  p[Monomial{2, 1}] = Rational(3);
  p[Monomial{0, 1}] = Rational(-1, 2);
  const auto ef = apply_generator(Generator::E, 0, lambda, apply_generator(Generator::F, 0, lambda, p));
  const auto fe = apply_generator(Generator::F, 0, lambda, apply_generator(Generator::E, 0, lambda, p));
  auto comm = ef;
  add_into(comm, fe, Rational(-1));
  add_into(comm, apply_generator(Generator::H, 0, lambda, p), Rational(-1));
  EXPECT_TRUE(is_zero_poly(comm));
}

TEST(RepSpace, GeneratorMatrixMatchesAction) {
  const Rational lambda(2);
  const auto basis = monomials_up_to(2, 2);
  const auto H = generator_action(Generator::H, 1, 2, 2, lambda);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Polynomial<Rational> p;
    p[basis[j]] = 1;
    const auto img = apply_generator(Generator::H, 1, lambda, p);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto it = img.find(basis[i]);
      EXPECT_EQ(H(i, j), it == img.end() ? Rational(0) : it->second);
    }
  }
}
