#pragma once

#include <functional>
#include <vector>

#include "operlab/config.hpp"
#include "operlab/gaudin.hpp"
#include "operlab/matrix.hpp"

namespace operlab {

// L = d^2 - sum lambda_i(lambda_i+2)/4(x-t_i)^2 - sum mu_i/(x-t_i).
struct Oper {
  std::vector<cplx> t;       // t_0..t_m
  std::vector<cplx> lambda;  // lambda_0..lambda_{m+1}
  std::vector<cplx> mu;      // mu_0..mu_m

  int m() const { return int(t.size()) - 1; }
  // v(x) with L = d^2 - v.
  cplx potential(cplx x) const;
  cplx potential_derivative(cplx x) const;
};

struct ConstraintResiduals {
  double sum = 0.0;     // |sum mu_i|
  double moment = 0.0;  // |sum t_i mu_i - (rhs)|
};

ConstraintResiduals oper_constraints(const std::vector<cplx>& t, const std::vector<cplx>& lambda,
                                     const std::vector<cplx>& mu);

// Throws ConstraintViolation carrying both residuals.
Oper oper_from_mu(const GaudinConfig& config, const std::vector<cplx>& mu, double tol = 1e-8);

// L = (d - u)(d + u), u = sum lambda_i/2(x-t_i) - sum 1/(x-w_j). mu_i are the residues at t_i.
Oper miura(const GaudinConfig& config, const std::vector<cplx>& w);

// Residue of v = u^2 - u' at w_j (zero iff the j-th Bethe equation holds).
std::vector<cplx> miura_residues_at_roots(const GaudinConfig& config, const std::vector<cplx>& w);

// Monic Q (coefficients Q_0 = 1, Q_1..Q_n of x^n, x^{n-1}, ...) with prod (x-t_i)^{-lambda_i/2} Q in ker L.
// Throws ResonanceError when lambda_{m+1} in {-2,...,-n-1}.
// n is read off from sum lambda_i - lambda_{m+1} = 2n.
std::vector<cplx> q_polynomial(const Oper& oper, double tol = 1e-8);
std::vector<cplx> q_polynomial_roots(const std::vector<cplx>& q);
cplx eval_monic(const std::vector<cplx>& q, cplx x);

// Baxter operator Q(x) = sum_k Q_k x^{n-k}, Q_0 = Id.
template <class T>
struct BasicQOperator {
  int n = 0;
  std::vector<DenseMatrix<T>> coeffs;  // coeffs[k] multiplies x^{n-k}
  double residual = 0.0;               // max entry of the consistency equations

  DenseMatrix<T> operator()(const T& x) const {
    DenseMatrix<T> acc = coeffs.front();
    for (std::size_t k = 1; k < coeffs.size(); ++k) acc = acc.scaled(x) + coeffs[k];
    return acc;
  }
};

using QOperator = BasicQOperator<cplx>;
using RationalQOperator = BasicQOperator<Rational>;

// Solves A Q'' - B Q' - Q Ghat(x) = 0 coefficient-wise; throws ResonanceError / InconsistentSystem.
template <class T>
BasicQOperator<T> baxter_q(const BasicGaudinMatrices<T>& mats, double tol = 1e-8);

QOperator to_complex(const RationalQOperator& q);

// (d^2 - sum lambda_i/(x-t_i) d) H - H sum Ghat_i/(x-t_i) by central differences on the stencil.
// Throws StencilTooCoarse if h is not small relative to the distance to singular points.
double universal_oper_residual(const std::function<Eigen::MatrixXcd(cplx)>& H, const GaudinMatrices& mats,
                               const std::vector<cplx>& stencil, double h);

}  // namespace operlab
