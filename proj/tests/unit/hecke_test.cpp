#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "operlab/bethe.hpp"
#include "operlab/hecke.hpp"

using namespace operlab;

namespace {

QData fixture_data() {
  const auto cfg = make_config(std::vector<cplx>{0.0, 1.0, 2.0}, std::vector<cplx>{1.0, 1.0, 1.0}, 1);
  return qdata_from_roots(cfg, solve_bae(cfg)[0].w);
}

}  // namespace

TEST(Hecke, ThreePointCoefficientsAreUnimodular) {
  const auto h = hecke_3pt(cplx(0, 0.4), cplx(0, -0.7), cplx(0, 0.9), 1e3);
  EXPECT_NEAR(std::abs(h.Q_plus), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(h.R_minus), 1.0, 1e-12);
  EXPECT_LT(h.relative_error, 0.01);
}

TEST(Hecke, ThreePointSymmetricInSignOfX) {
  const cplx a(0, 0.4), b(0, -0.7), c(0, 0.9);
  EXPECT_NEAR(std::abs(hecke_3pt(a, b, c, 1e3).value), std::abs(hecke_3pt(a, b, c, -1e3).value), 1e-3);
}

TEST(Hecke, PhiFactorsAreReciprocal) {
  const auto d = fixture_data();
  for (cplx x : {cplx(0.3, 0.2), cplx(-1.5, 0.7), cplx(2.5, -1.1)})
    EXPECT_NEAR(phi_abs_square(d, x) * std::abs(phi_inverse_square(d, x)), 1.0, 1e-12);
}

TEST(Hecke, NormalDerivativeIsWronskian) {
  const auto d = fixture_data();
  const double x0 = default_basepoint(d);
  for (double x : {-0.6, 0.4, 1.4, 2.7}) {
    EXPECT_NEAR(std::abs(beta_wronskian_constant(d, x)), std::numbers::pi, 1e-15);
    EXPECT_NEAR(beta_normal_derivative(d, x, x0, +1), beta_wronskian_constant(d, x), 1e-5);
  }
}

TEST(Hecke, GridAbscissae) {
  Grid g;
  g.re_lo = -1, g.re_hi = 3, g.nx = 5;
  EXPECT_DOUBLE_EQ(g.x_at(0), -1.0);
  EXPECT_DOUBLE_EQ(g.x_at(2), 1.0);
  EXPECT_DOUBLE_EQ(g.x_at(4), 3.0);
  g.nx = 1;
  EXPECT_DOUBLE_EQ(g.x_at(0), -1.0);
}

TEST(Hecke, PerturbedQBreaksPathIndependence) {
  const auto d = fixture_data();
  const double x0 = default_basepoint(d);
  EXPECT_LT(beta_quaternionic(d, cplx(1.5, 0.7), x0).path_residual, 1e-10);
  QData bad = d;
  bad.q[1] += 0.05;
  EXPECT_GT(beta_quaternionic(bad, cplx(1.5, 0.7), x0).path_residual, 0.01);
}
