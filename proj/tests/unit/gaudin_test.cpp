#include <gtest/gtest.h>

#include <cmath>

#include "operlab/gaudin.hpp"

using namespace operlab;

namespace {

RationalConfig fixture() {
  return make_config(std::vector<Rational>{0, 1, 2}, std::vector<Rational>{1, 1, 1}, 1);
}

bool is_zero(const DenseMatrix<Rational>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) return false;
  return true;
}

}  // namespace

TEST(Gaudin, ExactCommutation) {
  const auto cfg = make_config(std::vector<Rational>{0, 1, Rational(5, 2), 4}, std::vector<Rational>{1, 2, 1, 2}, 2);
  const auto sector = build_sector(cfg, true);
  const auto mats = gaudin_matrices(cfg, sector);
  for (std::size_t i = 0; i < mats.G.size(); ++i)
    for (std::size_t j = i + 1; j < mats.G.size(); ++j)
      EXPECT_TRUE(is_zero(mats.G[i] * mats.G[j] - mats.G[j] * mats.G[i]));
}

TEST(Gaudin, HamiltoniansSumToZero) {
  const auto mats = gaudin_matrices(fixture(), build_sector(fixture(), true));
  auto acc = mats.G[0];
  for (std::size_t i = 1; i < mats.G.size(); ++i) acc += mats.G[i];
  EXPECT_TRUE(is_zero(acc));
}

TEST(Gaudin, OmegaIsSymmetric) {
  Polynomial<Rational> p;
  p[Monomial{1, 0, 1}] = 2;
  p[Monomial{0, 2, 0}] = Rational(-1, 3);
  const Rational a(1), b(3, 2);
  EXPECT_EQ(apply_omega(0, 2, a, b, p), apply_omega(2, 0, b, a, p));
}

TEST(Gaudin, FixtureSpectrum) {
  const auto mats = to_complex(gaudin_matrices(fixture(), build_sector(fixture(), true)));
  const auto spec = joint_diagonalize(mats);
  ASSERT_EQ(spec.eigenvalues.size(), 2u);
  // mu_0 = -3/4 + 1/w with w = 1 -+ 1/sqrt(3), sorted ascending.
  const double w_minus = 1 - 1 / std::sqrt(3.0), w_plus = 1 + 1 / std::sqrt(3.0);
  EXPECT_NEAR(spec.eigenvalues[0][0].real(), -0.75 + 1 / w_plus, 1e-12);
  EXPECT_NEAR(spec.eigenvalues[1][0].real(), -0.75 + 1 / w_minus, 1e-12);
  EXPECT_LT(spec.residuals[0], 1e-12);
  EXPECT_EQ(spec.multiplicities, (std::vector<int>{1, 1}));
  EXPECT_LT(max_commutator(mats), 1e-14);
}

TEST(Gaudin, EigenvectorsSatisfyEigenEquations) {
  const auto cfg = make_config(std::vector<cplx>{0.0, 1.3, 2.0, 3.7}, std::vector<cplx>{1.0, 2.0, 1.0, 1.0}, 2);
  const auto sector = build_sector(cfg, true);
  const auto mats = gaudin_matrices(cfg, sector);
  const auto spec = joint_diagonalize(mats);
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
    for (std::size_t i = 0; i < mats.G.size(); ++i) {
      const Eigen::VectorXcd r = to_eigen(mats.G[i]) * spec.eigenvectors[k] - spec.eigenvalues[k][i] * spec.eigenvectors[k];
      EXPECT_LT(r.norm(), 1e-10);
    }
}

TEST(Gaudin, DeterministicGivenSeed) {
  const auto mats = to_complex(gaudin_matrices(fixture(), build_sector(fixture(), true)));
  DiagonalizeOptions o;
  o.seed = 99;
  const auto a = joint_diagonalize(mats, o), b = joint_diagonalize(mats, o);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
}
