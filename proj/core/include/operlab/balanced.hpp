#pragma once

#include <vector>

#include "operlab/monodromy.hpp"
#include "operlab/oper.hpp"

namespace operlab {

// Real configuration with weights lambda_j = -1 + c_j, c_j in iR (c_j = 0: untwisted, logarithmic case).
// Points t_0 < ... < t_m are finite; index m+1 is infinity.
struct RealPointConfig {
  std::vector<double> t;
  std::vector<cplx> c;  // m + 2 twists
};

// Accessory parameters with mu_0 prescribed and mu_1, mu_2 fixed by the residue constraints (m = 2).
std::vector<cplx> balanced_mu(const RealPointConfig& cfg, double mu0);
Oper balanced_oper(const RealPointConfig& cfg, double mu0);

// Local Frobenius pair at a marked point: (phi_a, phi_b) with exponents (1-c)/2, (1+c)/2, or
// phi_1 = z^{1/2}(...), phi_2 = phi_1 log z + z^{1/2}(...) when c = 0. Values are (psi, psi_x)
// in the x chart at the sample point; on the left side |z| replaces z.
struct LocalBasis {
  double x = 0.0;        // sample point
  Mat2 values;           // columns phi_a, phi_b; rows psi, psi_x
  bool logarithmic = false;
};

struct FrobeniusOptions {
  double offset_fraction = 0.25;  // of the distance to the nearest other singular point
  int max_terms = 4000;
};

// side = +1 (right of the point) or -1 (left). Throws SeriesDivergence.
LocalBasis local_basis(const Oper& oper, std::size_t point, int side, const FrobeniusOptions& opts = {});

struct IntervalSolution {
  std::size_t j = 0;
  Eigen::Vector2cd F, G;  // coefficients of f_j, g_j in the right basis at the start point
  cplx delta = 1.0;       // twisted normalization (|delta| = 1)
  double C = 0.0;         // untwisted normalization f ~ -phi_2 + C phi_1
  double xi = 0.0;        // g = ghat + i xi f
  double wronskian = 0.0; // W(f_j, g_j) measured at the interval midpoint
  std::vector<double> x;  // sample abscissae
  std::vector<double> f, g;
};

// Normalized pair on interval j whose f_j is proportional to the given coefficient vector.
IntervalSolution interval_solutions(const Oper& oper, std::size_t j, const Eigen::Vector2cd& direction,
                                    int samples = 9, const TransportOptions& topts = {});

struct BalancedData {
  std::vector<IntervalSolution> intervals;
  std::vector<Mat2> T;          // interval transfer matrices between local bases
  std::vector<double> a, b;
  std::vector<cplx> Lambda;     // exp(pi i c_j / 2)
  std::vector<Mat2> J, B;
  double product_residual = 0.0;  // |prod J_j B_j + Id|
  double trace_residual = 0.0;    // tr M - 2 for the sign-corrected circle monodromy
};

// Half-monodromy matrix sigma [[i, -xi^2], [1, i]], sigma = (Lambda + 1/Lambda)/2, xi = (Lambda - 1/Lambda)/(Lambda + 1/Lambda).
Mat2 half_monodromy(cplx Lambda);

// Circle transfer matrices only (no normalization); tr of the returned product drives the scan.
Mat2 circle_monodromy(const Oper& oper, std::vector<Mat2>* transfers = nullptr, const TransportOptions& topts = {});

BalancedData balance_check(const Oper& oper, const TransportOptions& topts = {});

struct BalancedScan {
  std::vector<double> hits;        // mu_0 with all a_j = 1
  std::vector<double> candidates;  // all roots of the trace condition
  std::vector<std::vector<double>> a_at_candidates;
  double step = 0;                 // grid spacing after refinement
};

// Scans [lo, hi] starting from `step`, halving the grid at least three times and then until the sign-change
// count holds over two halvings (at most seven). Candidates are refined with TOMS 748.
BalancedScan find_balanced_4pt(const RealPointConfig& cfg, double lo, double hi, double step, double a_tol = 1e-6,
                               const TransportOptions& topts = {});

}  // namespace operlab
