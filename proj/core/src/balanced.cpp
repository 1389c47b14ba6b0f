#include "operlab/balanced.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "operlab/errors.hpp"
#include "operlab/localfield.hpp"

namespace operlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinHalvings = 3;
constexpr std::size_t kMaxHalvings = 7;

cplx residue_coefficient(cplx l) { return l * (l + 2.0) / 4.0; }

bool untwisted(cplx c) { return std::abs(c) < 1e-12; }

std::size_t npoints(const Oper& oper) { return oper.t.size() + 1; }

cplx twist(const Oper& oper, std::size_t p) { return oper.lambda[p] + 1.0; }

// Coefficient of z^{k-2} of the potential in the local chart at point p (u = -1/x at infinity).
std::vector<cplx> laurent(const Oper& oper, std::size_t p, int K) {
  std::vector<cplx> co(std::size_t(K + 1), 0.0);
  const std::size_t m1 = oper.t.size();
  if (p < m1) {
    co[0] = residue_coefficient(oper.lambda[p]);
    if (K >= 1) co[1] = oper.mu[p];
    for (std::size_t i = 0; i < m1; ++i) {
      if (i == p) continue;
      const cplx d = oper.t[p] - oper.t[i];
      const cplx ci = residue_coefficient(oper.lambda[i]);
      cplx dk = d * d;  // d^k for k = 2
      cplx sign = 1.0;
      for (int k = 2; k <= K; ++k) {
        co[std::size_t(k)] += sign * (ci * double(k - 1) / dk + oper.mu[i] * d / dk);
        dk *= d;
        sign = -sign;
      }
    }
  } else {
    for (int k = 0; k <= K; ++k) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < m1; ++i) {
        const cplx mt = -oper.t[i];
        s += residue_coefficient(oper.lambda[i]) * double(k + 1) * std::pow(mt, k) - oper.mu[i] * std::pow(mt, k + 1);
      }
      co[std::size_t(k)] = s;
    }
  }
  return co;
}

struct Series {
  std::vector<cplx> a;  // exponent rho series
  std::vector<cplx> b;  // logarithmic partner (untwisted only)
};

// Frobenius coefficients for exponent rho; with log = true also the companion of the double exponent.
Series frobenius(const std::vector<cplx>& co, cplx rho, bool log, double zabs, int max_terms) {
  Series s;
  s.a.push_back(1.0);
  if (log) s.b.push_back(0.0);
  int small = 0;
  for (int k = 1; k <= max_terms; ++k) {
    if (std::size_t(k) >= co.size()) fail(ErrorKind::SeriesDivergence, "Laurent expansion too short");
    cplx sa = 0.0, sb = 0.0;
    for (int p = 1; p <= k; ++p) {
      sa += co[std::size_t(p)] * s.a[std::size_t(k - p)];
      if (log) sb += co[std::size_t(p)] * s.b[std::size_t(k - p)];
    }
    const cplx den = double(k) * (2.0 * rho + double(k) - 1.0);
    if (std::abs(den) < 1e-12) fail(ErrorKind::SeriesDivergence, "resonant Frobenius exponents");
    const cplx ak = sa / den;
    s.a.push_back(ak);
    double term = std::abs(ak) * std::pow(zabs, k);
    if (log) {
      const cplx bk = (sb - (2.0 * rho + 2.0 * k - 1.0) * ak) / den;
      s.b.push_back(bk);
      term = std::max(term, std::abs(bk) * std::pow(zabs, k));
    }
    if (!std::isfinite(term)) fail(ErrorKind::SeriesDivergence, "Frobenius series overflow");
    small = term < 1e-17 ? small + 1 : 0;
    if (small >= 3) return s;
  }
  fail(ErrorKind::SeriesDivergence, "Frobenius series did not converge within the term budget");
}

// Value and z-derivative of |z|^rho sum a_k z^k.
std::pair<cplx, cplx> eval_series(const std::vector<cplx>& a, cplx rho, double z) {
  cplx P = 0.0, dP = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) {
    dP = dP * z + P;
    P = P * z + a[k];
  }
  const cplx zr = std::exp(rho * std::log(std::abs(z)));
  return {zr * P, rho * zr / z * P + zr * dP};
}

double singular_distance(const Oper& oper, std::size_t p) {
  const std::size_t m1 = oper.t.size();
  double d = std::numeric_limits<double>::infinity();
  if (p < m1) {
    for (std::size_t i = 0; i < m1; ++i)
      if (i != p) d = std::min(d, std::abs(oper.t[p] - oper.t[i]));
  } else {
    for (auto t : oper.t)
      if (std::abs(t) > 0) d = std::min(d, 1.0 / std::abs(t));
  }
  return d;
}

Mat2 K_matrix(const Oper& oper, std::size_t p) {
  return p < oper.t.size() ? Mat2(-Mat2::Identity()) : Mat2(Mat2::Identity());
}

struct Normalized {
  Eigen::Vector2cd F, G;
  cplx delta = 1.0;
  double C = 0.0, xi = 0.0, scale = 1.0;
};

// Fixes the phase of a real-structured direction and applies the local normalization.
Normalized normalize(const Eigen::Vector2cd& v_in, cplx c) {
  Normalized n;
  Eigen::Vector2cd v = v_in;
  if (untwisted(c)) {
    const int k = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
    v *= std::conj(v(k)) / std::abs(v(k));
    n.scale = -v(1).real();
    if (std::abs(n.scale) < 1e-300) fail(ErrorKind::PreconditionViolation, "solution has no logarithmic part");
    n.F = v / n.scale;
    n.F = Eigen::Vector2cd(n.F(0).real(), -1.0);
    n.C = n.F(0).real();
    n.G = Eigen::Vector2cd(kPi, 0.0);
    return n;
  }
  const cplx ratio = std::conj(v(1)) / v(0);
  v *= std::exp(cplx(0.0, 0.5 * std::arg(ratio)));
  const cplx gp = gamma_cos(c), gm = gamma_cos(-c);
  const double s2 = (v(0) * v(1) / (gp * gm)).real();
  double s = std::sqrt(std::abs(s2));
  cplx delta = v(0) / (s * gp);
  if (delta.real() < 0) {
    s = -s;
    delta = -delta;
  }
  n.scale = s;
  n.delta = delta / std::abs(delta);
  n.F = Eigen::Vector2cd(n.delta * gp, 1.0 / n.delta * gm);
  const Eigen::Vector2cd ghat(0.0, kPi / (n.delta * c * gp));
  n.xi = (std::conj(ghat(1)) / (cplx(0.0, 2.0) * n.F(0))).real();
  n.G = ghat + cplx(0.0, n.xi) * n.F;
  return n;
}

}  // namespace

std::vector<cplx> balanced_mu(const RealPointConfig& cfg, double mu0) {
  if (cfg.t.size() != 3 || cfg.c.size() != 4)
    fail(ErrorKind::InvalidConfig, "four-point configuration needs three finite points and four twists");
  if (!(cfg.t[0] < cfg.t[1] && cfg.t[1] < cfg.t[2])) fail(ErrorKind::InvalidConfig, "points must be increasing");
  cplx rhs = residue_coefficient(cfg.c[3] - 1.0);
  for (int i = 0; i < 3; ++i) rhs -= residue_coefficient(cfg.c[std::size_t(i)] - 1.0);
  // mu1 + mu2 = -mu0, t1 mu1 + t2 mu2 = rhs - t0 mu0
  const double t0 = cfg.t[0], t1 = cfg.t[1], t2 = cfg.t[2];
  const cplx s = -mu0, w = rhs - t0 * mu0;
  const cplx mu2 = (w - t1 * s) / (t2 - t1);
  return {mu0, s - mu2, mu2};
}

Oper balanced_oper(const RealPointConfig& cfg, double mu0) {
  Oper L;
  for (auto t : cfg.t) L.t.emplace_back(t, 0.0);
  for (auto c : cfg.c) {
    if (std::abs(c.real()) > 1e-14) fail(ErrorKind::InvalidConfig, "twists must be purely imaginary");
    L.lambda.push_back(c - 1.0);
  }
  L.mu = balanced_mu(cfg, mu0);
  return L;
}

LocalBasis local_basis(const Oper& oper, std::size_t p, int side, const FrobeniusOptions& opts) {
  const std::size_t m1 = oper.t.size();
  if (p > m1) fail(ErrorKind::PreconditionViolation, "point index out of range");
  const double h = opts.offset_fraction * singular_distance(oper, p);
  const double z = side > 0 ? h : -h;
  const cplx c = twist(oper, p);
  LocalBasis out;
  out.logarithmic = untwisted(c);
  // Terms needed: ratio offset_fraction per step.
  const int K = std::min(opts.max_terms, 40 + int(std::ceil(40.0 / -std::log10(opts.offset_fraction))));
  const auto co = laurent(oper, p, K + 2);
  Mat2 local;  // rows (phi, phi_z)
  if (out.logarithmic) {
    const cplx rho = 0.5;
    const auto s = frobenius(co, rho, true, h, K + 1);
    const auto [p1, dp1] = eval_series(s.a, rho, z);
    const auto [hb, dhb] = eval_series(s.b, rho, z);
    const double L = std::log(std::abs(z));
    local << p1, p1 * L + hb, dp1, dp1 * L + p1 / z + dhb;
  } else {
    const cplx ra = (1.0 - c) / 2.0, rb = (1.0 + c) / 2.0;
    const auto sa = frobenius(co, ra, false, h, K + 1);
    const auto sb = frobenius(co, rb, false, h, K + 1);
    const auto [fa, dfa] = eval_series(sa.a, ra, z);
    const auto [fb, dfb] = eval_series(sb.a, rb, z);
    local << fa, fb, dfa, dfb;
  }
  if (p < m1) {
    out.x = oper.t[p].real() + z;
    out.values = local;
  } else {
    // (phi, phi_u) = P (psi, psi_x) with u = -1/x.
    const double x = -1.0 / z;
    Mat2 P;
    P << -1.0 / x, 0.0, 1.0, -x;
    out.x = x;
    out.values = P.inverse() * local;
  }
  return out;
}

Mat2 half_monodromy(cplx Lambda) {
  const cplx sum = Lambda + 1.0 / Lambda;
  const cplx xi = (Lambda - 1.0 / Lambda) / sum;
  Mat2 J;
  J << cplx(0, 1), -xi * xi, 1.0, cplx(0, 1);
  return 0.5 * sum * J;
}

namespace {

struct Circle {
  std::vector<LocalBasis> right, left;
  std::vector<Mat2> T;
  Mat2 M;
};

Circle build_circle(const Oper& oper, const TransportOptions& topts) {
  for (auto t : oper.t)
    if (std::abs(t.imag()) > 0) fail(ErrorKind::PreconditionViolation, "marked points must be real");
  for (std::size_t i = 1; i < oper.t.size(); ++i)
    if (!(oper.t[i - 1].real() < oper.t[i].real())) fail(ErrorKind::PreconditionViolation, "points must be increasing");
  const std::size_t N = npoints(oper);
  Circle cir;
  for (std::size_t p = 0; p < N; ++p) {
    cir.right.push_back(local_basis(oper, p, +1));
    cir.left.push_back(local_basis(oper, p, -1));
  }
  cir.M = Mat2::Identity();
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t q = (j + 1) % N;
    const Mat2 X = transport(oper, std::vector<cplx>{cir.right[j].x, cir.left[q].x}, topts);
    const Mat2 T = cir.left[q].values.inverse() * X * cir.right[j].values;
    cir.T.push_back(T);
    cir.M = K_matrix(oper, q) * T * cir.M;
  }
  return cir;
}

IntervalSolution make_interval(const Oper& oper, const Circle& cir, std::size_t j, const Normalized& n, int samples,
                               const TransportOptions& topts) {
  const std::size_t N = npoints(oper);
  const std::size_t q = (j + 1) % N;
  IntervalSolution out;
  out.j = j;
  out.F = n.F;
  out.G = n.G;
  out.delta = n.delta;
  out.C = n.C;
  out.xi = n.xi;
  const double x0 = cir.right[j].x, x1 = cir.left[q].x;
  const Eigen::Vector2cd f0 = cir.right[j].values * n.F, g0 = cir.right[j].values * n.G;
  Mat2 Y0;
  Y0 << f0(0), g0(0), f0(1), g0(1);
  double xm = 0.5 * (x0 + x1);
  for (int k = 0; k < samples; ++k) {
    const double x = x0 + (x1 - x0) * (k + 1.0) / (samples + 1.0);
    const Mat2 Y = transport(oper, std::vector<cplx>{x0, x}, topts) * Y0;
    out.x.push_back(x);
    out.f.push_back(Y(0, 0).real());
    out.g.push_back(Y(0, 1).real());
  }
  const Mat2 Ym = transport(oper, std::vector<cplx>{x0, xm}, topts) * Y0;
  out.wronskian = (Ym(0, 0) * Ym(1, 1) - Ym(1, 0) * Ym(0, 1)).real();
  return out;
}

}  // namespace

Mat2 circle_monodromy(const Oper& oper, std::vector<Mat2>* transfers, const TransportOptions& topts) {
  Circle cir = build_circle(oper, topts);
  if (transfers) *transfers = cir.T;
  return cir.M;
}

IntervalSolution interval_solutions(const Oper& oper, std::size_t j, const Eigen::Vector2cd& direction, int samples,
                                    const TransportOptions& topts) {
  const Circle cir = build_circle(oper, topts);
  if (j >= npoints(oper)) fail(ErrorKind::PreconditionViolation, "interval index out of range");
  return make_interval(oper, cir, j, normalize(direction, twist(oper, j)), samples, topts);
}

BalancedData balance_check(const Oper& oper, const TransportOptions& topts) {
  const Circle cir = build_circle(oper, topts);
  const std::size_t N = npoints(oper);
  BalancedData out;
  out.T = cir.T;
  out.trace_residual = (cir.M.trace() - 2.0).real();

  // f_0 spans the fixed line of the sign-corrected circle monodromy.
  Eigen::JacobiSVD<Mat2> svd(cir.M - Mat2::Identity(), Eigen::ComputeFullV);
  const Eigen::Vector2cd v0 = svd.matrixV().col(1);

  std::vector<Normalized> norm;
  norm.push_back(normalize(v0, twist(oper, 0)));
  for (std::size_t j = 0; j + 1 < N; ++j) {
    const Eigen::Vector2cd w = K_matrix(oper, j + 1) * cir.T[j] * norm[j].F;
    norm.push_back(normalize(w, twist(oper, j + 1)));
  }
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t q = (j + 1) % N;
    const Eigen::Vector2cd fL = cir.T[j] * norm[j].F;
    const Eigen::Vector2cd gL = cir.T[j] * norm[j].G;
    const Eigen::Vector2cd gstar = norm[q].G;
    Mat2 A;
    A << fL(0), -gstar(0), fL(1), -gstar(1);
    const Eigen::Vector2cd ba = A.partialPivLu().solve(gL);
    double a = ba(1).real();
    if (q == N - 1) a = -a;  // sign of the frame at infinity
    out.a.push_back(a);
    out.b.push_back(ba(0).real());
    out.intervals.push_back(make_interval(oper, cir, j, norm[j], 5, topts));
  }
  Mat2 P = Mat2::Identity(), Pinv = Mat2::Identity();
  for (std::size_t j = 0; j < N; ++j) {
    const cplx Lambda = std::exp(cplx(0.0, kPi / 2.0) * twist(oper, j));
    out.Lambda.push_back(Lambda);
    const Mat2 J = half_monodromy(Lambda);
    Mat2 B;
    B << 1.0, out.b[j], 0.0, -out.a[j];
    out.J.push_back(J);
    out.B.push_back(B);
    P = P * J * B;
    Pinv = Pinv * J.inverse() * B;
  }
  out.product_residual = std::max((P + Mat2::Identity()).norm(), (Pinv + Mat2::Identity()).norm());
  return out;
}

BalancedScan find_balanced_4pt(const RealPointConfig& cfg, double lo, double hi, double step, double a_tol,
                               const TransportOptions& topts) {
  if (!(step > 0) || !(hi > lo)) fail(ErrorKind::InvalidConfig, "scan bracket must satisfy lo < hi and step > 0");
  auto F = [&](double mu0) { return (circle_monodromy(balanced_oper(cfg, mu0), nullptr, topts).trace() - 2.0).real(); };
  BalancedScan out;
  const int steps = int(std::ceil((hi - lo) / step));
  std::vector<double> xs, fs;
  for (int k = 0; k <= steps; ++k) {
    xs.push_back(std::min(hi, lo + k * step));
    fs.push_back(F(xs.back()));
  }
  auto sign_changes = [&] {
    std::size_t n = 0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) n += fs[k] == 0.0 || fs[k] * fs[k + 1] < 0;
    return n;
  };
  // Close root pairs (gaps below 1e-2) can share a cell; halve at least three times, then until the
  // count survives two successive halvings.
  std::vector<std::size_t> counts{sign_changes()};
  out.step = step;
  while (counts.size() <= kMaxHalvings &&
         !(counts.size() > kMinHalvings && counts.end()[-1] == counts.end()[-2] && counts.end()[-2] == counts.end()[-3])) {
    std::vector<double> x2, f2;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      const double mid = 0.5 * (xs[k] + xs[k + 1]);
      x2.insert(x2.end(), {xs[k], mid});
      f2.insert(f2.end(), {fs[k], F(mid)});
    }
    x2.push_back(xs.back());
    f2.push_back(fs.back());
    xs.swap(x2);
    fs.swap(f2);
    out.step /= 2;
    counts.push_back(sign_changes());
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (fs[k] == 0.0) {
      out.candidates.push_back(xs[k]);
    } else if (fs[k] * fs[k + 1] < 0) {
      boost::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(F, xs[k], xs[k + 1], fs[k], fs[k + 1],
                                                       boost::math::tools::eps_tolerance<double>(50), iters);
      out.candidates.push_back(0.5 * (r.first + r.second));
    }
  }
  for (double mu0 : out.candidates) {
    const auto data = balance_check(balanced_oper(cfg, mu0), topts);
    out.a_at_candidates.push_back(data.a);
    bool ok = true;
    for (double a : data.a) ok = ok && std::abs(a - 1.0) < a_tol;
    if (ok) out.hits.push_back(mu0);
  }
  return out;
}

}  // namespace operlab
