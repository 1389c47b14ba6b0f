#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "operlab/config.hpp"
#include "operlab/errors.hpp"
#include "operlab/repspace.hpp"

namespace operlab {

struct BetheRoots {
  std::vector<cplx> w;     // sorted by (re, im)
  double residual = 0.0;   // max_j |F_j(w)|
};

struct BetheOptions {
  double tol = 1e-10;       // Newton residual target
  int seeds = 64;           // random multistart seeds
  std::uint64_t seed = 1;
  bool homotopy = true;     // continuation from a discrete-series reference
  double dedup = 1e-7;
  int jobs = 1;
};

struct BetheReport {
  std::vector<BetheRoots> solutions;
  std::size_t expected = 0;
  int escapes = 0;  // homotopy paths that left every compact set or hit a marked point
};

class BetheIncomplete : public Error {
 public:
  BetheIncomplete(std::vector<BetheRoots> found, std::size_t expected);
  const std::vector<BetheRoots>& found() const noexcept { return found_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::vector<BetheRoots> found_;
  std::size_t expected_;
};

// F_j = sum_i lambda_i/(w_j - t_i) - sum_{s != j} 2/(w_j - w_s).
std::vector<cplx> bae_residual(const GaudinConfig& config, const std::vector<cplx>& w);

// Expected number of solutions: capped sector dimension for dominant integral data, else uncapped.
std::size_t expected_solution_count(const GaudinConfig& config);

BetheReport solve_bae_report(const GaudinConfig& config, const BetheOptions& opts = {});

// Throws BetheIncomplete when fewer than the expected number of solutions are found.
std::vector<BetheRoots> solve_bae(const GaudinConfig& config, const BetheOptions& opts = {});

// Newton polish of a single root tuple; returns false if it does not converge to a valid solution.
bool polish_roots(const GaudinConfig& config, std::vector<cplx>& w, double tol, int max_iter = 100);

// f(w_1)...f(w_n) 1 with f(w) = sum_i f_i/(w - t_i), as sector coordinates. Throws ZeroVector.
Eigen::VectorXcd bethe_vector(const std::vector<cplx>& w, const GaudinConfig& config, const WeightSector& sector);
Polynomial<cplx> bethe_polynomial(const std::vector<cplx>& w, const GaudinConfig& config);

// mu_i = lambda_i (sum_{k != i} lambda_k/2(t_i - t_k) - sum_j 1/(t_i - w_j)).
std::vector<cplx> bethe_eigenvalues(const std::vector<cplx>& w, const GaudinConfig& config);

}  // namespace operlab
