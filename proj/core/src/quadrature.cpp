#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "operlab/errors.hpp"
#include "operlab/localfield.hpp"

namespace operlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Integrand on a piece [a,b]: sing^q * G, where sing is the distance to the singular end.
struct Piece {
  double a = 0.0, b = 0.0;
  int sing_end = 0;  // -1 left, +1 right, 0 none
  cplx q = 0.0;
  std::function<cplx(double x, double dist)> G;  // dist = distance to the singular end (or unused)
};

// Tanh-sinh on [a,b] of h(x, da, db).
template <class H>
cplx tanh_sinh(const H& h, double a, double b, double tol, int max_level) {
  const double L = b - a;
  const double half = 0.5 * L;
  const double tmax = 6.2;
  auto node = [&](double t) -> cplx {
    const double u = 0.5 * kPi * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = 0.5 * kPi * std::cosh(t) / (ch * ch) * half;
    double da, db;
    if (t >= 0) {
      db = L / (1.0 + std::exp(2.0 * u));
      da = L - db;
    } else {
      da = L / (1.0 + std::exp(-2.0 * u));
      db = L - da;
    }
    if (da <= 0.0 || db <= 0.0 || w == 0.0) return 0.0;
    const double x = t >= 0 ? b - db : a + da;
    return w * h(x, da, db);
  };
  double hstep = 0.5;
  cplx sum = node(0.0);
  for (double t = hstep; t <= tmax; t += hstep) sum += node(t) + node(-t);
  cplx est = sum * hstep;
  for (int level = 1; level <= max_level; ++level) {
    hstep *= 0.5;
    cplx add = 0.0;
    for (double t = hstep; t <= tmax; t += 2.0 * hstep) add += node(t) + node(-t);
    sum += add;
    const cplx next = sum * hstep;
    const double diff = std::abs(next - est);
    est = next;
    if (level >= 3 && diff <= tol * std::max(std::abs(est), 1e-300)) break;
  }
  return est;
}

cplx integrate_piece(const Piece& p, double tol, int max_level) {
  const double L = p.b - p.a;
  if (p.sing_end == 0) {
    return tanh_sinh([&](double x, double, double) { return p.G(x, 0.0); }, p.a, p.b, tol, max_level);
  }
  const bool left = p.sing_end < 0;
  const double xs = left ? p.a : p.b;
  const cplx g0 = p.G(xs, 0.0);
  auto h = [&](double x, double da, double db) -> cplx {
    const double d = left ? da : db;
    return std::exp(p.q * std::log(d)) * (p.G(x, d) - g0);
  };
  const cplx body = tanh_sinh(h, p.a, p.b, tol, max_level);
  return body + g0 * std::exp((p.q + 1.0) * std::log(L)) / (p.q + 1.0);
}

struct Layout {
  std::vector<double> z;
  std::vector<cplx> p;
  double spacing = 1.0;
  double reach = 1.0;
};

Layout make_layout(const std::vector<double>& points, const std::vector<cplx>& exponents) {
  if (points.size() != exponents.size() || points.empty())
    fail(ErrorKind::PreconditionViolation, "points and exponents must be nonempty and of equal length");
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return points[i] < points[j]; });
  Layout lay;
  for (auto i : idx) {
    if (!lay.z.empty() && points[i] == lay.z.back()) {
      lay.p.back() += exponents[i];
    } else {
      lay.z.push_back(points[i]);
      lay.p.push_back(exponents[i]);
    }
  }
  double d = 0.0, spread = 0.0;
  for (std::size_t i = 1; i < lay.z.size(); ++i) {
    const double g = lay.z[i] - lay.z[i - 1];
    d = d == 0.0 ? g : std::min(d, g);
  }
  if (lay.z.size() > 1) spread = lay.z.back() - lay.z.front();
  lay.spacing = d > 0.0 ? d : 1.0;
  lay.reach = std::max({2.0 * spread, 2.0 * lay.spacing, 1.0});
  return lay;
}

std::vector<Piece> build_pieces(const Layout& lay, double eps) {
  const std::size_t K = lay.z.size();
  const double E = double(K + 1) * eps;
  std::vector<cplx> pe(K);
  for (std::size_t k = 0; k < K; ++k) pe[k] = lay.p[k] + eps;
  auto deform = [E](double s) {
    const double as = std::abs(s);
    const double l = as > 1.0 ? 2.0 * std::log(as) + std::log1p(1.0 / (s * s)) : std::log1p(s * s);
    return -0.5 * E * l;
  };
  // Finite-chart smooth part excluding a singular point `skip`.
  auto finite_G = [&lay, pe, deform](int skip) {
    return [&lay, pe, deform, skip](double s, double) -> cplx {
      cplx acc = deform(s);
      for (std::size_t k = 0; k < lay.z.size(); ++k) {
        if (int(k) == skip) continue;
        acc += pe[k] * std::log(std::abs(s - lay.z[k]));
      }
      return std::exp(acc);
    };
  };
  std::vector<Piece> pieces;
  auto add_segment = [&](double a, double b, int sa, int sb) {
    // Geometric breakpoints toward singular ends; each sub-piece has at most one singular end.
    std::vector<double> br{a, b};
    const double L = b - a, mid = 0.5 * (a + b);
    br.push_back(mid);
    for (double s = lay.spacing; s < 0.5 * L; s *= 2.0) {
      if (sa >= 0) br.push_back(a + s);
      if (sb >= 0) br.push_back(b - s);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      Piece pc;
      pc.a = br[i];
      pc.b = br[i + 1];
      if (i == 0 && sa >= 0) {
        pc.sing_end = -1;
        pc.q = pe[sa];
        pc.G = finite_G(sa);
      } else if (i + 2 == br.size() && sb >= 0) {
        pc.sing_end = 1;
        pc.q = pe[sb];
        pc.G = finite_G(sb);
      } else {
        pc.G = finite_G(-1);
      }
      pieces.push_back(std::move(pc));
    }
  };
  const double R = lay.reach;
  add_segment(lay.z.front() - R, lay.z.front(), -1, 0);
  for (std::size_t k = 0; k + 1 < K; ++k) add_segment(lay.z[k], lay.z[k + 1], int(k), int(k + 1));
  add_segment(lay.z.back(), lay.z.back() + R, int(K - 1), -1);
  // Tails s = z_end +- R/v, v in (0,1], singular (power) end at v = 0.
  cplx psum = 0.0;
  for (auto x : pe) psum += x;
  const cplx qinf = E - psum - 2.0;
  for (int side : {+1, -1}) {
    const double zend = side > 0 ? lay.z.back() : lay.z.front();
    Piece pc;
    pc.a = 0.0;
    pc.b = 1.0;
    pc.sing_end = -1;
    pc.q = qinf;
    pc.G = [&lay, pe, E, R, zend, side](double v, double) -> cplx {
      cplx acc = std::log(R);
      for (std::size_t k = 0; k < lay.z.size(); ++k)
        acc += pe[k] * std::log(std::abs(R + side * v * (zend - lay.z[k])));
      const double n = R + side * v * zend;
      acc += -0.5 * E * std::log(v * v + n * n);
      return std::exp(acc);
    };
    pieces.push_back(std::move(pc));
  }
  return pieces;
}

}  // namespace

cplx norm_power_integral_at(const std::vector<double>& points, const std::vector<cplx>& exponents, double eps,
                            const QuadratureOptions& opts) {
  const Layout lay = make_layout(points, exponents);
  const auto pieces = build_pieces(lay, eps);
  cplx total = 0.0;
  for (const auto& pc : pieces) total += integrate_piece(pc, opts.node_tol, opts.max_level);
  return total;
}

RegularizedIntegral norm_power_integral(const std::vector<double>& points, const std::vector<cplx>& exponents,
                                        const QuadratureOptions& opts) {
  if (opts.eps_levels < 4 || opts.eps0 <= 0.0)
    fail(ErrorKind::PreconditionViolation, "need at least 4 eps levels and eps0 > 0");
  std::vector<cplx> vals;
  double eps = opts.eps0;
  std::vector<double> epss;
  for (int k = 0; k < opts.eps_levels; ++k, eps *= 0.5) {
    epss.push_back(eps);
    vals.push_back(norm_power_integral_at(points, exponents, eps, opts));
  }
  // Richardson table in eps (ratio 2); row k eliminates the first k powers of eps.
  const std::size_t n = vals.size();
  std::vector<std::vector<cplx>> T(n);
  for (std::size_t k = 0; k < n; ++k) {
    T[k].push_back(vals[k]);
    for (std::size_t j = 1; j <= k; ++j) {
      const double f = std::ldexp(1.0, int(j)) - 1.0;
      T[k].push_back(T[k][j - 1] + (T[k][j - 1] - T[k - 1][j - 1]) / f);
    }
  }
  const cplx last = T[n - 1][n - 1];
  const cplx prev = T[n - 2][n - 2];
  RegularizedIntegral out;
  out.value = last;
  out.eps_used = epss.back();
  out.tail_estimate = std::abs(last - prev);
  const bool finite = std::isfinite(last.real()) && std::isfinite(last.imag());
  if (!finite || out.tail_estimate > opts.rel_tol * std::max(std::abs(last), 1.0)) {
    std::ostringstream os;
    os.precision(6);
    os << "eps-sequence failed to stabilize: last extrapolants differ by " << out.tail_estimate
       << " (value " << std::abs(last) << ")";
    fail(ErrorKind::NonConvergence, os.str());
  }
  return out;
}

RegularizedIntegral beta_quadrature(cplx alpha, cplx beta, const QuadratureOptions& opts) {
  return norm_power_integral({0.0, 1.0}, {alpha - 1.0, beta - 1.0}, opts);
}

RegularizedIntegral hypergeom_phi(cplx alpha, cplx beta, cplx gamma, double x, const QuadratureOptions& opts) {
  if (std::abs(alpha.real()) > 1e-14)
    fail(ErrorKind::PreconditionViolation, "hypergeom_phi requires Re alpha = 0");
  if (std::abs(alpha) < 1e-14)
    fail(ErrorKind::PreconditionViolation, "hypergeom_phi requires |.|^alpha != 1 (alpha = 0 excluded)");
  if (!(beta.real() > 0.0 && beta.real() < 1.0) || !(gamma.real() > 0.0 && gamma.real() < 1.0))
    fail(ErrorKind::PreconditionViolation, "hypergeom_phi requires 0 < Re beta, Re gamma < 1");
  if (x == 0.0 || x == 1.0) fail(ErrorKind::PreconditionViolation, "hypergeom_phi requires x not in {0,1}");
  return norm_power_integral({0.0, 1.0, x}, {alpha - gamma, gamma - 1.0, beta - 1.0}, opts);
}

cplx hypergeom_phi_asymptotic(cplx alpha, cplx beta, cplx gamma, double x, FieldTag field) {
  const double nx = field_norm(x, field);
  const double lx = std::log(nx);
  return beta_closed(-alpha, gamma, field) * std::exp((beta - 1.0) * lx) +
         beta_closed(alpha, beta, field) * std::exp((alpha + beta - 1.0) * lx);
}

}  // namespace operlab
