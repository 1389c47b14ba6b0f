#include "operlab/hecke.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "operlab/errors.hpp"
#include "operlab/parallel.hpp"

namespace operlab {

namespace {

constexpr double kPi = std::numbers::pi;

bool imaginary(cplx z) { return std::abs(z.real()) < 1e-14; }

}  // namespace

Hecke3pt hecke_3pt(cplx a, cplx b, cplx c, double x, const QuadratureOptions& opts) {
  if (!imaginary(a) || !imaginary(b) || !imaginary(c))
    fail(ErrorKind::PreconditionViolation, "hecke_3pt requires a, b, c purely imaginary");
  if (std::abs(c) < 1e-14) fail(ErrorKind::PreconditionViolation, "hecke_3pt requires c != 0");
  if (x == 0.0 || x == 1.0) fail(ErrorKind::PreconditionViolation, "hecke_3pt requires x not in {0, 1}");

  // Phi(alpha, beta, gamma; x) with these parameters is exactly H_{x+}.
  const cplx alpha = c;
  const cplx beta = (a + b - c + 1.0) / 2.0;
  const cplx gamma = (-a + b + c + 1.0) / 2.0;

  Hecke3pt out;
  const auto q = hypergeom_phi(alpha, beta, gamma, x, opts);
  out.value = q.value;
  out.tail_estimate = q.tail_estimate;
  if (q.tail_estimate > opts.rel_tol * std::max(1.0, std::abs(q.value)))
    fail(ErrorKind::NonConvergence, "hecke_3pt quadrature did not settle under eps extrapolation");

  const auto G = [](cplx z) { return gamma_local(z, FieldTag::Real); };
  out.Q_plus = G((a + b - c + 1.0) / 2.0) / G((a + b + c + 1.0) / 2.0);
  out.R_minus = G((a - b - c + 1.0) / 2.0) / G((a - b + c + 1.0) / 2.0);

  const double lx = std::log(std::abs(x));
  const cplx t1 = beta_closed(-alpha, gamma, FieldTag::Real) * std::exp((beta - 1.0) * lx);
  const cplx t2 = beta_closed(alpha, beta, FieldTag::Real) * std::exp((alpha + beta - 1.0) * lx);
  out.prediction = t1 + t2;
  out.leading = std::max(std::abs(t1), std::abs(t2));
  out.relative_error = std::abs(out.value - out.prediction) / out.leading;
  return out;
}

QData qdata_from_roots(const GaudinConfig& config, const std::vector<cplx>& w) {
  QData d{config, {1.0}};
  for (const auto& r : w) {
    d.q.push_back(0.0);
    for (std::size_t k = d.q.size() - 1; k > 0; --k) d.q[k] -= r * d.q[k - 1];
  }
  return d;
}

cplx phi_inverse_square(const QData& d, cplx x) {
  const auto& c = d.config;
  cplx num = 1.0;
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    const cplx l = c.lambda[i];
    const double li = std::round(l.real());
    if (std::abs(l - li) < 1e-12)
      num *= std::pow(x - c.t[i], int(li));
    else
      num *= std::pow(x - c.t[i], l);
  }
  const cplx qv = eval_monic(d.q, x);
  return num / (qv * qv);
}

double phi_abs_square(const QData& d, cplx x) {
  const auto& c = d.config;
  double s = std::norm(eval_monic(d.q, x));
  for (std::size_t i = 0; i < c.t.size(); ++i) s *= std::pow(std::abs(x - c.t[i]), -c.lambda[i].real());
  return s;
}

namespace {

std::vector<cplx> poles(const QData& d) {
  std::vector<cplx> p = d.q.size() > 1 ? q_polynomial_roots(d.q) : std::vector<cplx>{};
  for (std::size_t i = 0; i < d.config.t.size(); ++i)
    if (d.config.lambda[i].real() < 0) p.push_back(d.config.t[i]);
  return p;
}

double segment_distance(cplx p, cplx A, cplx B) {
  const cplx AB = B - A;
  const double L2 = std::norm(AB);
  double u = L2 > 0 ? ((p - A) * std::conj(AB)).real() / L2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return std::abs(p - (A + u * AB));
}

cplx path_integral(const QData& d, const std::vector<cplx>& path, const std::vector<cplx>& pole_list,
                   const BetaOptions& opts) {
  cplx total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const cplx A = path[k], B = path[k + 1];
    if (A == B) continue;
    for (const auto& p : pole_list)
      if (segment_distance(p, A, B) < opts.clearance)
        fail(ErrorKind::PathThroughSingularity, "integration path passes through a pole of Phi^{-2}");
    const auto f = [&](double u) { return phi_inverse_square(d, A + u * (B - A)) * (B - A); };
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, opts.max_depth, opts.tol, &err);
  }
  return total;
}

}  // namespace

double default_basepoint(const QData& d) {
  const auto& t = d.config.t;
  if (t.size() < 2) fail(ErrorKind::PreconditionViolation, "basepoint needs at least two finite points");
  const double lo = t[0].real(), hi = t[1].real();
  const auto ps = poles(d);
  // Scan interior fractions from the midpoint outwards.
  for (int k = 0; k < 64; ++k) {
    const double frac = 0.5 + (k % 2 == 0 ? 1 : -1) * 0.4 * ((k + 1) / 2) / 32.0;
    const double x0 = lo + frac * (hi - lo);
    bool clear = true;
    for (const auto& p : ps) clear = clear && std::abs(p - x0) > 1e-3 * (hi - lo);
    if (clear) return x0;
  }
  fail(ErrorKind::PathThroughSingularity, "no admissible basepoint in the leftmost interval");
}

BetaValue beta_quaternionic(const QData& d, cplx x, double x0, const BetaOptions& opts) {
  if (x.imag() == 0.0) return {0.0, 0.0, 0.0};
  const auto ps = poles(d);
  const double sgn = x.imag() > 0 ? 1.0 : -1.0;

  // Horizontal legs run at height >= 1 so that points near the real axis are reached vertically.
  const double lift = sgn * std::max(1.0, std::abs(x.imag()));
  const std::vector<cplx> primary{x0, cplx(x0, lift), cplx(x.real(), lift), x};
  BetaValue out;
  out.integral = path_integral(d, primary, ps, opts);
  if (opts.reroute) {
    // Detours through the opposite half-plane around either end of the configuration.
    double left = std::min(x0, x.real()), right = std::max(x0, x.real()), depth = std::abs(x.imag());
    for (const auto& p : ps) {
      left = std::min(left, p.real());
      right = std::max(right, p.real());
      depth = std::max(depth, std::abs(p.imag()));
    }
    for (const auto& t : d.config.t) {
      left = std::min(left, t.real());
      right = std::max(right, t.real());
    }
    left -= 1.0;
    right += 1.0;
    depth += 1.0;
    for (const double end : {left, right}) {
      const std::vector<cplx> detour{x0, cplx(x0, -sgn * depth), cplx(end, -sgn * depth), cplx(end, lift),
                                     cplx(x.real(), lift), x};
      const cplx other = path_integral(d, detour, ps, opts);
      out.path_residual =
          std::max(out.path_residual, std::abs(out.integral - other) / std::max(1.0, std::abs(out.integral)));
    }
  }
  out.beta = sgn * kPi * phi_abs_square(d, x) * out.integral.imag();
  return out;
}

double beta_normal_derivative(const QData& d, double x, double x0, int side, double h, BetaOptions opts) {
  opts.reroute = false;
  const double s = side >= 0 ? 1.0 : -1.0;
  double f[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 1; k < 5; ++k) f[k] = beta_quaternionic(d, cplx(x, s * k * h), x0, opts).beta;
  return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
}

double beta_wronskian_constant(const QData& d, double x) {
  const cplx v = phi_inverse_square(d, x);
  return v.real() >= 0 ? kPi : -kPi;
}

HeckeScan hecke_scan(const QData& d, const Grid& grid, int jobs, const BetaOptions& opts) {
  HeckeScan out;
  out.basepoint = default_basepoint(d);
  out.normalization = kPi;
  const std::size_t N = std::size_t(grid.nx) * std::size_t(grid.ny);
  out.x.resize(N);
  out.beta.resize(N);
  out.path_residual.resize(N);
  parallel_for(N, jobs, [&](std::size_t k) {
    const int i = int(k / std::size_t(grid.ny)), j = int(k % std::size_t(grid.ny));
    const cplx x(grid.x_at(i), grid.y_at(j));
    const auto b = beta_quaternionic(d, x, out.basepoint, opts);
    out.x[k] = x;
    out.beta[k] = b.beta;
    out.path_residual[k] = b.path_residual;
  });
  return out;
}

PdeResidual beta_pde_residual(const QData& d, const Oper& oper, const Grid& grid, double h, int jobs,
                              BetaOptions opts) {
  opts.reroute = false;
  const double x0 = default_basepoint(d);
  const std::size_t N = std::size_t(grid.nx) * std::size_t(grid.ny);
  std::vector<double> hol(N), anti(N);
  const auto B = [&](cplx z) { return beta_quaternionic(d, z, x0, opts).beta; };
  // Fourth-order central stencils.
  const double w1[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  const double w2[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
  parallel_for(N, jobs, [&](std::size_t k) {
    const int i = int(k / std::size_t(grid.ny)), j = int(k % std::size_t(grid.ny));
    const cplx z(grid.x_at(i), grid.y_at(j));
    double F[5][5];
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) F[a][b] = B(z + cplx((a - 2) * h, (b - 2) * h));
    double fxx = 0, fyy = 0, fxy = 0;
    for (int a = 0; a < 5; ++a) {
      fxx += w2[a] * F[a][2];
      fyy += w2[a] * F[2][a];
      for (int b = 0; b < 5; ++b) fxy += w1[a] * w1[b] * F[a][b];
    }
    fxx /= h * h;
    fyy /= h * h;
    fxy /= h * h;
    const double f = F[2][2];
    const cplx v = oper.potential(z);
    const cplx dxx = 0.25 * cplx(fxx - fyy, -2.0 * fxy);
    const cplx dbb = 0.25 * cplx(fxx - fyy, 2.0 * fxy);
    const double scale = std::max({std::abs(dxx), std::abs(v * f), 1e-300});
    hol[k] = std::abs(dxx - v * f) / scale;
    anti[k] = std::abs(dbb - std::conj(v) * f) / scale;
  });
  PdeResidual out;
  for (std::size_t k = 0; k < N; ++k) {
    out.holomorphic = std::max(out.holomorphic, hol[k]);
    out.antiholomorphic = std::max(out.antiholomorphic, anti[k]);
  }
  return out;
}

}  // namespace operlab
