#pragma once

#include <complex>
#include <vector>

namespace operlab {

using cplx = std::complex<double>;

enum class FieldTag { Real, Complex };

// Norm of the field: |z| for R, |z|^2 for C.
double field_norm(cplx z, FieldTag field);

// Complex log-gamma (principal branch away from the negative axis) and gamma.
cplx lgamma_c(cplx z);
cplx gamma_c(cplx z);

// Tate gamma factor. Real: 2(2pi)^{-a} Gamma(a) cos(pi a/2); Complex: (2pi)^{1-2a} Gamma(a)/Gamma(1-a).
// Throws PoleError at poles.
cplx gamma_local(cplx a, FieldTag field);

// The form Gamma(c) cos(pi c/2) used for interval normalizations; differs from the
// real Tate factor by the constant 2(2pi)^{-c}.
cplx gamma_cos(cplx c);

cplx beta_closed(cplx alpha, cplx beta, FieldTag field);

struct RegularizedIntegral {
  cplx value;
  double eps_used = 0.0;
  double tail_estimate = 0.0;
};

struct QuadratureOptions {
  double eps0 = 0.05;      // first deformation parameter
  int eps_levels = 8;      // eps_k = eps0 2^{-k}, k < eps_levels
  double rel_tol = 1e-6;   // acceptance of the extrapolated tail estimate
  double node_tol = 1e-13; // tanh-sinh refinement tolerance per segment
  int max_level = 9;
};

// Integral over R of prod |s - z_k|^{p_k} ds, deformed by (1+s^2)^{-eps/2}, extrapolated eps -> 0.
RegularizedIntegral norm_power_integral(const std::vector<double>& points,
                                        const std::vector<cplx>& exponents,
                                        const QuadratureOptions& opts = {});

// Same integrand at a single eps (no extrapolation).
cplx norm_power_integral_at(const std::vector<double>& points, const std::vector<cplx>& exponents,
                            double eps, const QuadratureOptions& opts = {});

RegularizedIntegral beta_quadrature(cplx alpha, cplx beta, const QuadratureOptions& opts = {});

// Phi(alpha,beta,gamma;x) = int |s|^{alpha-gamma} |s-1|^{gamma-1} |s-x|^{beta-1} ds over R.
RegularizedIntegral hypergeom_phi(cplx alpha, cplx beta, cplx gamma, double x,
                                  const QuadratureOptions& opts = {});

// Two-term large-|x| prediction B(-alpha,gamma)|x|^{beta-1} + B(alpha,beta)|x|^{alpha+beta-1}.
cplx hypergeom_phi_asymptotic(cplx alpha, cplx beta, cplx gamma, double x, FieldTag field = FieldTag::Real);

}  // namespace operlab
