#include <gtest/gtest.h>

#include <cmath>

#include "operlab/bethe.hpp"
#include "operlab/gaudin.hpp"

using namespace operlab;

namespace {

GaudinConfig fixture() { return make_config(std::vector<cplx>{0.0, 1.0, 2.0}, std::vector<cplx>{1.0, 1.0, 1.0}, 1); }

}  // namespace

TEST(Bethe, FixtureRoots) {
  const auto sols = solve_bae(fixture());
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_NEAR(sols[0].w[0].real(), 1 - 1 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(sols[1].w[0].real(), 1 + 1 / std::sqrt(3.0), 1e-12);
  for (const auto& s : sols) {
    EXPECT_LT(std::abs(s.w[0].imag()), 1e-12);
    EXPECT_LT(s.residual, 1e-10);
  }
}

TEST(Bethe, TwoPointSingleRoot) {
  const auto sols = solve_bae(make_config(std::vector<cplx>{0.0, 1.0}, std::vector<cplx>{2.0, 2.0}, 1));
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_NEAR(std::abs(sols[0].w[0] - 0.5), 0.0, 1e-12);
}

TEST(Bethe, ResidualVanishesOnlyAtRoots) {
  const auto cfg = fixture();
  EXPECT_LT(std::abs(bae_residual(cfg, {cplx(1 + 1 / std::sqrt(3.0))})[0]), 1e-14);
  EXPECT_GT(std::abs(bae_residual(cfg, {cplx(0.5)})[0]), 0.1);
}

TEST(Bethe, PolishFromPerturbedStart) {
  const auto cfg = fixture();
  std::vector<cplx> w{cplx(1.6, 0.01)};
  ASSERT_TRUE(polish_roots(cfg, w, 1e-13));
  EXPECT_NEAR(std::abs(w[0] - (1 + 1 / std::sqrt(3.0))), 0.0, 1e-12);
}

TEST(Bethe, ExpectedCounts) {
  EXPECT_EQ(expected_solution_count(fixture()), 2u);
  // Uncapped count binom(n + m - 1, m - 1) for generic weights.
  const auto generic = make_config(std::vector<cplx>{0.0, 1.0, 3.0, 4.5}, std::vector<cplx>{0.3, 0.7, 1.1, 0.4}, 2);
  EXPECT_EQ(expected_solution_count(generic), 6u);
  EXPECT_EQ(solve_bae(generic).size(), 6u);
}

TEST(Bethe, VectorIsCommonEigenvector) {
  const auto cfg = make_config(std::vector<cplx>{0.0, 1.0, 2.5, 4.0}, std::vector<cplx>{1.0, 2.0, 1.0, 2.0}, 2);
  const auto sector = build_sector(cfg, true);
  const auto mats = gaudin_matrices(cfg, sector);
  const auto sols = solve_bae(cfg);
  ASSERT_EQ(sols.size(), expected_solution_count(cfg));
  for (const auto& s : sols) {
    const Eigen::VectorXcd v = bethe_vector(s.w, cfg, sector);
    ASSERT_GT(v.norm(), 1e-8);
    const auto mu = bethe_eigenvalues(s.w, cfg);
    for (std::size_t i = 0; i < mats.G.size(); ++i)
      EXPECT_LT((to_eigen(mats.G[i]) * v - mu[i] * v).norm() / v.norm(), 1e-9);
  }
}

TEST(Bethe, ReportCountsMatch) {
  const auto rep = solve_bae_report(fixture());
  EXPECT_EQ(rep.expected, 2u);
  EXPECT_EQ(rep.solutions.size(), 2u);
}
