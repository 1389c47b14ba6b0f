#include <gtest/gtest.h>

#include <cmath>

#include "operlab/bethe.hpp"
#include "operlab/gaudin.hpp"
#include "operlab/oper.hpp"

using namespace operlab;

namespace {

GaudinConfig fixture() { return make_config(std::vector<cplx>{0.0, 1.0, 2.0}, std::vector<cplx>{1.0, 1.0, 1.0}, 1); }

}  // namespace

TEST(Oper, MiuraSatisfiesConstraints) {
  const auto cfg = make_config(std::vector<cplx>{0.0, 1.0, 2.5, 4.0}, std::vector<cplx>{1.0, 2.0, 1.0, 2.0}, 2);
  for (const auto& s : solve_bae(cfg)) {
    const auto L = miura(cfg, s.w);
    const auto r = oper_constraints(L.t, L.lambda, L.mu);
    EXPECT_LT(r.sum, 1e-10);
    EXPECT_LT(r.moment, 1e-10);
    const auto mu = bethe_eigenvalues(s.w, cfg);
    for (std::size_t i = 0; i < mu.size(); ++i) EXPECT_LT(std::abs(L.mu[i] - mu[i]), 1e-10);
  }
}

TEST(Oper, QPolynomialIsMonicInRoots) {
  const auto cfg = fixture();
  for (const auto& s : solve_bae(cfg)) {
    const auto q = q_polynomial(miura(cfg, s.w));
    ASSERT_EQ(q.size(), 2u);
    EXPECT_LT(std::abs(q[0] - 1.0), 1e-10);
    EXPECT_LT(std::abs(q[1] + s.w[0]), 1e-10);
    EXPECT_LT(std::abs(eval_monic(q, s.w[0])), 1e-10);
  }
}

TEST(Oper, RejectsInconsistentAccessoryParameters) {
  EXPECT_THROW(oper_from_mu(fixture(), {1.0, 0.0, 0.0}), ConstraintViolation);
}

TEST(Oper, ResonantInfinityThrows) {
  const auto cfg = make_config(std::vector<Rational>{0, 1}, std::vector<Rational>{1, -1}, 1);
  try {
    baxter_q(gaudin_matrices(cfg, build_sector(cfg, false)));
    FAIL() << "expected a resonance";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResonanceError);
  }
}

TEST(Oper, ExactBaxterOnFixture) {
  const auto cfg = make_config(std::vector<Rational>{0, 1, 2}, std::vector<Rational>{1, 1, 1}, 1);
  const auto Q = baxter_q(gaudin_matrices(cfg, build_sector(cfg, true)));
  ASSERT_EQ(Q.coeffs.size(), 2u);
  const auto& Q1 = Q.coeffs[1];
  ASSERT_EQ(Q1.rows(), 2u);
  // Eigenvalues -w with w = 1 -+ 1/sqrt(3).
  EXPECT_EQ(Q1(0, 0) + Q1(1, 1), Rational(-2));
  EXPECT_EQ(Q1(0, 0) * Q1(1, 1) - Q1(0, 1) * Q1(1, 0), Rational(2, 3));
}

TEST(Oper, CoarseStencilThrows) {
  const auto cfg = fixture();
  const auto mats = gaudin_matrices(cfg, build_sector(cfg, true));
  const auto Q = baxter_q(mats);
  auto H = [&](cplx x) { return to_eigen(Q(x)); };
  try {
    universal_oper_residual(H, mats, {cplx(0.1, 0.0)}, 0.05);
    FAIL() << "expected StencilTooCoarse";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StencilTooCoarse);
  }
  EXPECT_LT(universal_oper_residual(H, mats, {cplx(0.5, 1.0), cplx(3.0, -0.5)}, 1e-3), 1e-6);
}
