#pragma once

#include <vector>

#include "operlab/config.hpp"
#include "operlab/localfield.hpp"
#include "operlab/oper.hpp"

namespace operlab {

// Three-point scalar Hecke operator over R with lambda_0 = -1 + a, lambda_1 = -1 + b, c = lambda_inf + 1,
// t = (0, 1):  H_{x+} = int |s|^{(a-b+c-1)/2} |s-1|^{(-a+b+c-1)/2} |s-x|^{(a+b-c-1)/2} ds.
struct Hecke3pt {
  cplx value;          // quadrature of H_{x+}
  cplx Q_plus;         // Gamma((a+b-c+1)/2) / Gamma((a+b+c+1)/2)
  cplx R_minus;        // Gamma((a-b-c+1)/2) / Gamma((a-b+c+1)/2)
  cplx prediction;     // two-term large-|x| asymptotics
  double leading = 0;  // largest modulus of the two asymptotic terms
  double relative_error = 0;  // |value - prediction| / leading
  double tail_estimate = 0;
};

// Requires a, b, c purely imaginary, c != 0 and x not in {0, 1}. Throws NonConvergence.
Hecke3pt hecke_3pt(cplx a, cplx b, cplx c, double x, const QuadratureOptions& opts = {});

// Spectral data for the quaternionic eigenvalue: Phi(x) = prod (x - t_i)^{-lambda_i/2} Q(x).
struct QData {
  GaudinConfig config;
  std::vector<cplx> q;  // monic, highest coefficient first
};

QData qdata_from_roots(const GaudinConfig& config, const std::vector<cplx>& w);

// Phi^{-2} and |Phi|^2 at x.
cplx phi_inverse_square(const QData& d, cplx x);
double phi_abs_square(const QData& d, cplx x);

// Midpoint of (t_0, t_1), moved off any root of Q.
double default_basepoint(const QData& d);

struct BetaValue {
  double beta = 0.0;            // sign(Im x) pi |Phi|^2 Im int_{x0}^x Phi^{-2}
  cplx integral;                // along the primary path
  double path_residual = 0.0;   // |primary - rerouted| / max(1, |primary|)
};

struct BetaOptions {
  double tol = 1e-12;        // per-segment quadrature tolerance
  unsigned max_depth = 12;   // adaptive bisection depth
  double clearance = 1e-8;   // minimum distance from a path to a pole
  bool reroute = true;       // compute the path-independence residual
};

// Primary path: up from x0, across at height max(1, |Im x|), down to x. The residual compares it with
// detours through the opposite half-plane around either end. Throws PathThroughSingularity.
BetaValue beta_quaternionic(const QData& d, cplx x, double x0, const BetaOptions& opts = {});

// One-sided derivative in the direction of +i (side = +1) or -i (side = -1) at a real point.
double beta_normal_derivative(const QData& d, double x, double x0, int side = +1, double h = 1e-3,
                              BetaOptions opts = {});

// Expected normal derivative pi * sign(Phi^2(x)) (the Wronskian constant).
double beta_wronskian_constant(const QData& d, double x);

struct Grid {
  double re_lo = -1, re_hi = 1, im_lo = 0.25, im_hi = 1.25;
  int nx = 50, ny = 50;
  double x_at(int i) const { return nx > 1 ? re_lo + (re_hi - re_lo) * i / (nx - 1) : re_lo; }
  double y_at(int j) const { return ny > 1 ? im_lo + (im_hi - im_lo) * j / (ny - 1) : im_lo; }
};

struct HeckeScan {
  std::vector<cplx> x;
  std::vector<double> beta;
  std::vector<double> path_residual;
  double basepoint = 0.0;
  double normalization = 0.0;  // pi, the Wronskian constant of the pair
};

HeckeScan hecke_scan(const QData& d, const Grid& grid, int jobs = 1, const BetaOptions& opts = {});

struct PdeResidual {
  double holomorphic = 0.0;      // max relative |d_x^2 beta - v beta|
  double antiholomorphic = 0.0;  // max relative |d_xbar^2 beta - conj(v) beta|
};

// Finite-difference check of both oper equations on the grid; the potential comes from the oper.
PdeResidual beta_pde_residual(const QData& d, const Oper& oper, const Grid& grid, double h = 2e-3, int jobs = 1,
                              BetaOptions opts = {});

}  // namespace operlab
