#include "operlab/oper.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "operlab/errors.hpp"

namespace operlab {

namespace {

template <class T>
T residue_coefficient(const T& l) {
  return l * (l + from_int<T>(2)) / from_int<T>(4);
}

// Ascending coefficients of prod_{k != skip} (x - t_k).
template <class T>
std::vector<T> product_except(const std::vector<T>& t, std::size_t skip) {
  std::vector<T> p{T(1)};
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k == skip) continue;
    std::vector<T> q(p.size() + 1, T(0));
    for (std::size_t a = 0; a < p.size(); ++a) {
      q[a + 1] += p[a];
      q[a] -= t[k] * p[a];
    }
    p = std::move(q);
  }
  return p;
}

// Solves A Q'' - B Q' - Q Ghat(x) = 0 for Q = sum_d P_d x^d, P_n = Id, with
// A = prod (x - t_i), B = sum lambda_i prod_{k != i}(x - t_k), Ghat(x) = sum Ghat_i prod_{k != i}(x - t_k).
template <class T>
BasicQOperator<T> solve_q(const std::vector<T>& t, const std::vector<T>& lambda_finite, const T& lambda_inf, int n,
                          const std::vector<DenseMatrix<T>>& Ghat, std::size_t dim) {
  const std::size_t m1 = t.size();  // m + 1
  for (int k = 1; k <= n; ++k)
    if (lambda_inf + from_int<T>(k + 1) == T(0)) {
      std::ostringstream os;
      os << "lambda_{m+1} = " << -(k + 1) << " collides with the second exponent at infinity";
      fail(ErrorKind::ResonanceError, os.str());
    }
  const std::vector<T> a = product_except(t, m1);  // degree m + 1
  std::vector<T> b(m1, T(0));
  std::vector<DenseMatrix<T>> g(m1, DenseMatrix<T>(dim, dim));
  for (std::size_t i = 0; i < m1; ++i) {
    const auto e = product_except(t, i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      b[j] += lambda_finite[i] * e[j];
      g[j] += Ghat[i].scaled(e[j]);
    }
  }
  // P[d] is the coefficient of x^d.
  std::vector<DenseMatrix<T>> P(std::size_t(n + 1), DenseMatrix<T>(dim, dim));
  P[std::size_t(n)] = DenseMatrix<T>::identity(dim);
  const int top = n + int(m1) - 2;

  auto equation = [&](int p, int skip_d, double* magnitude_out) {
    DenseMatrix<T> E(dim, dim);
    double mag = 0.0;
    for (int d = 0; d <= n; ++d) {
      if (d == skip_d) continue;
      const auto& Pd = P[std::size_t(d)];
      T c(0);
      const int ia = p - d + 2, ib = p - d + 1, ig = p - d;
      if (ia >= 0 && ia < int(a.size())) c += a[std::size_t(ia)] * from_int<T>(long(d) * (d - 1));
      if (ib >= 0 && ib < int(b.size())) c -= b[std::size_t(ib)] * from_int<T>(d);
      if (!(c == T(0))) {
        E += Pd.scaled(c);
        mag = std::max(mag, magnitude(c) * Pd.max_abs());
      }
      if (ig >= 0 && ig < int(g.size())) {
        const auto term = Pd * g[std::size_t(ig)];
        E = E - term;
        mag = std::max(mag, term.max_abs());
      }
    }
    if (magnitude_out) *magnitude_out = mag;
    return E;
  };

  // Coefficient of x^{top-k} determines P_{n-k} with pivot k(lambda_{m+1}+k+1).
  for (int k = 1; k <= n; ++k) {
    const int d = n - k;
    const T diag = from_int<T>(k) * (lambda_inf + from_int<T>(k + 1));
    const auto E = equation(top - k, d, nullptr);
    P[std::size_t(d)] = E.scaled(T(-1) / diag);
  }

  BasicQOperator<T> out;
  out.n = n;
  for (int k = 0; k <= n; ++k) out.coeffs.push_back(P[std::size_t(n - k)]);
  double worst = 0.0;
  for (int p = 0; p <= top + 1; ++p) {
    double mag = 0.0;
    const auto E = equation(p, -1, &mag);
    worst = std::max(worst, E.max_abs() / std::max(mag, 1.0));
  }
  out.residual = worst;
  return out;
}

int degree_from_weights(const std::vector<cplx>& lambda) {
  cplx s = 0.0;
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i) s += lambda[i];
  const cplx twice_n = s - lambda.back();
  const double r = std::round(twice_n.real());
  if (std::abs(twice_n - r) > 1e-9 * std::max(1.0, std::abs(twice_n)) || r < 0 || std::fmod(r, 2.0) != 0.0)
    fail(ErrorKind::PreconditionViolation, "sum lambda_i - lambda_{m+1} is not 2n with integer n >= 0");
  return int(r / 2);
}

}  // namespace

cplx Oper::potential(cplx x) const {
  cplx v = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const cplx d = x - t[i];
    v += residue_coefficient(lambda[i]) / (d * d) + mu[i] / d;
  }
  return v;
}

cplx Oper::potential_derivative(cplx x) const {
  cplx v = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const cplx d = x - t[i];
    v -= 2.0 * residue_coefficient(lambda[i]) / (d * d * d) + mu[i] / (d * d);
  }
  return v;
}

ConstraintResiduals oper_constraints(const std::vector<cplx>& t, const std::vector<cplx>& lambda,
                                     const std::vector<cplx>& mu) {
  cplx s = 0.0, moment = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    s += mu[i];
    moment += t[i] * mu[i] + residue_coefficient(lambda[i]);
  }
  moment -= residue_coefficient(lambda.back());
  return {std::abs(s), std::abs(moment)};
}

Oper oper_from_mu(const GaudinConfig& config, const std::vector<cplx>& mu, double tol) {
  validate(config);
  if (mu.size() != config.t.size()) fail(ErrorKind::InvalidConfig, "one accessory parameter per finite point");
  const auto r = oper_constraints(config.t, config.lambda, mu);
  double scale = 1.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    scale = std::max(scale, std::abs(mu[i]) * std::max(1.0, std::abs(config.t[i])));
  if (r.sum > tol * scale || r.moment > tol * scale) throw ConstraintViolation(r.sum, r.moment);
  return Oper{config.t, config.lambda, mu};
}

Oper miura(const GaudinConfig& config, const std::vector<cplx>& w) {
  Oper L{config.t, config.lambda, std::vector<cplx>(config.t.size(), 0.0)};
  for (std::size_t i = 0; i < config.t.size(); ++i) {
    cplx regular = 0.0;
    for (std::size_t k = 0; k < config.t.size(); ++k)
      if (k != i) regular += config.lambda[k] / (2.0 * (config.t[i] - config.t[k]));
    for (auto x : w) regular -= 1.0 / (config.t[i] - x);
    L.mu[i] = config.lambda[i] * regular;
  }
  return L;
}

std::vector<cplx> miura_residues_at_roots(const GaudinConfig& config, const std::vector<cplx>& w) {
  std::vector<cplx> out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    cplx regular = 0.0;
    for (std::size_t i = 0; i < config.t.size(); ++i) regular += config.lambda[i] / (2.0 * (w[j] - config.t[i]));
    for (std::size_t s = 0; s < w.size(); ++s)
      if (s != j) regular -= 1.0 / (w[j] - w[s]);
    out.push_back(-2.0 * regular);
  }
  return out;
}

std::vector<cplx> q_polynomial(const Oper& oper, double tol) {
  const int n = degree_from_weights(oper.lambda);
  const std::size_t m1 = oper.t.size();
  std::vector<DenseMatrix<cplx>> ghat;
  for (std::size_t i = 0; i < m1; ++i) {
    cplx mu0 = 0.0;
    for (std::size_t j = 0; j < m1; ++j)
      if (j != i) mu0 += oper.lambda[i] * oper.lambda[j] / (2.0 * (oper.t[i] - oper.t[j]));
    DenseMatrix<cplx> g(1, 1);
    g(0, 0) = oper.mu[i] - mu0;
    ghat.push_back(g);
  }
  const std::vector<cplx> lf(oper.lambda.begin(), oper.lambda.end() - 1);
  const auto Q = solve_q<cplx>(oper.t, lf, oper.lambda.back(), n, ghat, 1);
  if (Q.residual > tol) {
    std::ostringstream os;
    os << "no polynomial solution of degree " << n << " (relative residual " << Q.residual << ")";
    fail(ErrorKind::InconsistentSystem, os.str());
  }
  std::vector<cplx> q;
  for (const auto& c : Q.coeffs) q.push_back(c(0, 0));
  return q;
}

std::vector<cplx> q_polynomial_roots(const std::vector<cplx>& q) {
  const Eigen::Index n = Eigen::Index(q.size()) - 1;
  if (n <= 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) C(k, k - 1) = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) C(k, n - 1) = -q[std::size_t(n - k)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> out;
  for (Eigen::Index k = 0; k < n; ++k) out.push_back(es.eigenvalues()(k));
  return out;
}

cplx eval_monic(const std::vector<cplx>& q, cplx x) {
  cplx acc = 0.0;
  for (auto c : q) acc = acc * x + c;
  return acc;
}

template <class T>
BasicQOperator<T> baxter_q(const BasicGaudinMatrices<T>& mats, double tol) {
  const std::vector<T> lf(mats.lambda.begin(), mats.lambda.end() - 1);
  auto Q = solve_q<T>(mats.t, lf, mats.lambda.back(), mats.n, mats.Ghat, mats.dim());
  if (Q.residual > tol) {
    std::ostringstream os;
    os << "Baxter equations inconsistent (relative residual " << Q.residual << ")";
    fail(ErrorKind::InconsistentSystem, os.str());
  }
  return Q;
}

template BasicQOperator<Rational> baxter_q<Rational>(const RationalGaudinMatrices&, double);
template BasicQOperator<cplx> baxter_q<cplx>(const GaudinMatrices&, double);

QOperator to_complex(const RationalQOperator& q) {
  QOperator out;
  out.n = q.n;
  out.residual = q.residual;
  for (const auto& c : q.coeffs) {
    DenseMatrix<cplx> d(c.rows(), c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) d(i, j) = to_cplx(c(i, j));
    out.coeffs.push_back(d);
  }
  return out;
}

double universal_oper_residual(const std::function<Eigen::MatrixXcd(cplx)>& H, const GaudinMatrices& mats,
                               const std::vector<cplx>& stencil, double h) {
  if (!(h > 0.0)) fail(ErrorKind::StencilTooCoarse, "step must be positive");
  std::vector<Eigen::MatrixXcd> G;
  for (const auto& g : mats.Ghat) G.push_back(to_eigen(g));
  double worst = 0.0;
  for (auto x : stencil) {
    double dist = std::numeric_limits<double>::infinity();
    for (auto t : mats.t) dist = std::min(dist, std::abs(x - t));
    if (h > 0.05 * dist) {
      std::ostringstream os;
      os << "step " << h << " is not small against the distance " << dist << " to the nearest marked point";
      fail(ErrorKind::StencilTooCoarse, os.str());
    }
    const Eigen::MatrixXcd H0 = H(x);
    // Richardson-combined central differences (fourth order).
    auto d1 = [&](double s) { return Eigen::MatrixXcd((H(x + s) - H(x - s)) / (2.0 * s)); };
    auto d2 = [&](double s) { return Eigen::MatrixXcd((H(x + s) - 2.0 * H0 + H(x - s)) / (s * s)); };
    const Eigen::MatrixXcd D1 = (4.0 * d1(h / 2) - d1(h)) / 3.0;
    const Eigen::MatrixXcd D2 = (4.0 * d2(h / 2) - d2(h)) / 3.0;
    Eigen::MatrixXcd R = D2;
    Eigen::MatrixXcd Gx = Eigen::MatrixXcd::Zero(H0.cols(), H0.cols());
    for (std::size_t i = 0; i < mats.t.size(); ++i) {
      R -= mats.lambda[i] / (x - mats.t[i]) * D1;
      Gx += G[i] / (x - mats.t[i]);
    }
    R -= H0 * Gx;
    worst = std::max(worst, R.norm() / std::max(1.0, H0.norm()));
  }
  return worst;
}

}  // namespace operlab
