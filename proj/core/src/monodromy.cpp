#include "operlab/monodromy.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "operlab/errors.hpp"

namespace operlab {

namespace odeint = boost::numeric::odeint;

PathPiece PathPiece::line(cplx from, cplx to) {
  PathPiece p;
  p.kind = Kind::Line;
  p.a = from;
  p.b = to;
  return p;
}

PathPiece PathPiece::arc(cplx center, double radius, double theta0, double theta1) {
  PathPiece p;
  p.kind = Kind::Arc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  p.a = p.start();
  p.b = p.end();
  return p;
}

cplx PathPiece::start() const { return kind == Kind::Line ? a : center + std::polar(radius, theta0); }
cplx PathPiece::end() const { return kind == Kind::Line ? b : center + std::polar(radius, theta1); }

namespace {

using State = std::array<double, 8>;

Mat2 unpack(const State& s) {
  Mat2 Y;
  Y << cplx(s[0], s[1]), cplx(s[2], s[3]), cplx(s[4], s[5]), cplx(s[6], s[7]);
  return Y;
}

State pack(const Mat2& Y) {
  return {Y(0, 0).real(), Y(0, 0).imag(), Y(0, 1).real(), Y(0, 1).imag(),
          Y(1, 0).real(), Y(1, 0).imag(), Y(1, 1).real(), Y(1, 1).imag()};
}

double distance_to_piece(const PathPiece& p, cplx z) {
  if (p.kind == PathPiece::Kind::Line) {
    const cplx d = p.b - p.a;
    const double len2 = std::norm(d);
    double s = len2 > 0 ? std::real((z - p.a) * std::conj(d)) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p.a + s * d - z);
  }
  // Arc: radial distance if the angle of z lies in the swept range, else the nearer endpoint.
  const double lo = std::min(p.theta0, p.theta1), hi = std::max(p.theta0, p.theta1);
  const cplx rel = z - p.center;
  double best = std::min(std::abs(p.start() - z), std::abs(p.end() - z));
  if (std::abs(rel) > 0) {
    double ang = std::arg(rel);
    while (ang < lo) ang += 2 * M_PI;
    if (ang <= hi) best = std::min(best, std::abs(std::abs(rel) - p.radius));
  } else {
    best = std::min(best, p.radius);
  }
  return best;
}

Mat2 transport_piece(const Oper& oper, const PathPiece& p, const Mat2& Y0, double tol) {
  auto rhs = [&](const State& s, State& ds, double tau) {
    cplx z, dz;
    if (p.kind == PathPiece::Kind::Line) {
      dz = p.b - p.a;
      z = p.a + tau * dz;
    } else {
      const double th = p.theta0 + tau * (p.theta1 - p.theta0);
      const cplx e = std::polar(p.radius, th);
      z = p.center + e;
      dz = cplx(0.0, p.theta1 - p.theta0) * e;
    }
    const cplx v = oper.potential(z);
    const Mat2 Y = unpack(s);
    Mat2 A;
    A << 0.0, 1.0, v, 0.0;
    ds = pack(Mat2(dz * (A * Y)));
  };
  State s = pack(Y0);
  try {
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
    odeint::integrate_adaptive(stepper, rhs, s, 0.0, 1.0, 1e-3);
  } catch (const std::exception& e) {
    fail(ErrorKind::StepFailure, std::string("ODE integration failed: ") + e.what());
  }
  for (double x : s)
    if (!std::isfinite(x)) fail(ErrorKind::StepFailure, "non-finite solution during transport");
  return unpack(s);
}

void check_margin(const Oper& oper, const std::vector<PathPiece>& path, double margin) {
  for (const auto& piece : path)
    for (std::size_t i = 0; i < oper.t.size(); ++i) {
      const double d = distance_to_piece(piece, oper.t[i]);
      if (d < margin) {
        std::ostringstream os;
        os << "path passes within " << d << " of t_" << i << " = " << oper.t[i];
        fail(ErrorKind::SingularityTooClose, os.str());
      }
    }
}

}  // namespace

Mat2 transport(const Oper& oper, const std::vector<PathPiece>& path, const TransportOptions& opts) {
  check_margin(oper, path, opts.margin);
  Mat2 Y = Mat2::Identity();
  for (const auto& piece : path) Y = transport_piece(oper, piece, Y, opts.tol);
  return Y;
}

Mat2 transport(const Oper& oper, const std::vector<cplx>& polyline, const TransportOptions& opts) {
  std::vector<PathPiece> path;
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k) path.push_back(PathPiece::line(polyline[k], polyline[k + 1]));
  return transport(oper, path, opts);
}

MonodromyData monodromy_generators(const Oper& oper, const LoopPolicy& policy) {
  const std::size_t m1 = oper.t.size();
  cplx centre = 0.0;
  for (auto t : oper.t) centre += t / double(m1);
  double diam = 0.0, gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t j = i + 1; j < m1; ++j) {
      diam = std::max(diam, std::abs(oper.t[i] - oper.t[j]));
      gap = std::min(gap, std::abs(oper.t[i] - oper.t[j]));
    }
  if (m1 < 2) {
    diam = 1.0;
    gap = 1.0;
  }
  MonodromyData out;
  out.basepoint = policy.basepoint.value_or(centre + cplx(0.0, diam));
  const double r = policy.radius_fraction * gap;
  double reach = 0.0;
  for (auto t : oper.t) reach = std::max(reach, std::abs(t - centre));

  for (std::size_t i = 0; i < m1; ++i) {
    const double th = std::arg(out.basepoint - oper.t[i]);
    const cplx entry = oper.t[i] + std::polar(r, th);
    const Mat2 to = transport(oper, std::vector<PathPiece>{PathPiece::line(out.basepoint, entry)}, policy.transport);
    const Mat2 circle =
        transport(oper, std::vector<PathPiece>{PathPiece::arc(oper.t[i], r, th, th + 2 * M_PI)}, policy.transport);
    const Mat2 back = transport(oper, std::vector<PathPiece>{PathPiece::line(entry, out.basepoint)}, policy.transport);
    out.local.push_back(circle);
    out.generators.push_back(back * circle * to);
  }
  {
    // Smallest admissible circle: solutions grow like R^{|lambda_inf|/2} along it.
    const double R = std::max(std::abs(out.basepoint - centre), reach + r);
    const double th = std::arg(out.basepoint - centre);
    const cplx entry = centre + std::polar(R, th);
    std::vector<PathPiece> loop{PathPiece::arc(centre, R, th, th - 2 * M_PI)};
    if (std::abs(entry - out.basepoint) > 1e-12) {
      loop.insert(loop.begin(), PathPiece::line(out.basepoint, entry));
      loop.push_back(PathPiece::line(entry, out.basepoint));
    }
    out.infinity = transport(oper, loop, policy.transport);
  }
  // Errors scale with the matrix entries, which are large when solutions at the basepoint differ
  // greatly in growth, so both diagnostics are relative to spectral norms.
  auto norm2 = [](const Mat2& M) { return Eigen::JacobiSVD<Mat2>(M).singularValues()(0); };
  auto det_dev = [&](const Mat2& M) { return std::abs(M.determinant() - 1.0) / std::max(1.0, norm2(M) * norm2(M)); };
  for (const auto& M : out.generators) out.det_deviation = std::max(out.det_deviation, det_dev(M));
  out.det_deviation = std::max(out.det_deviation, det_dev(out.infinity));
  double scale = norm2(out.infinity);
  for (const auto& M : out.generators) scale *= norm2(M);
  scale = std::max(1.0, scale);

  // Order loops by the direction in which they leave the basepoint; try both senses.
  std::vector<std::size_t> order(m1);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(oper.t[a] - out.basepoint) < std::arg(oper.t[b] - out.basepoint);
  });
  auto residual = [&](const std::vector<std::size_t>& ord) {
    Mat2 P = Mat2::Identity();
    for (auto k : ord) P = out.generators[k] * P;
    return (out.infinity * P - Mat2::Identity()).norm() / scale;
  };
  std::vector<std::size_t> rev(order.rbegin(), order.rend());
  const double r1 = residual(order), r2 = residual(rev);
  out.order = r1 <= r2 ? order : rev;
  out.pi1_residual = std::min(r1, r2);
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::No:
      return "no";
    case Verdict::Yes:
      return "yes";
    case Verdict::Ambiguous:
      return "ambiguous";
  }
  return "?";
}

namespace {

Verdict decide(double margin, double tol) {
  if (margin < tol / 10) return Verdict::Yes;
  if (margin > tol * 10) return Verdict::No;
  return Verdict::Ambiguous;
}

double scalar_defect(const Mat2& M) {
  return std::min((M - Mat2::Identity()).norm(), (M + Mat2::Identity()).norm());
}

// Per-generator verdicts use `single`, which may hold each generator in its own frame; joint
// verdicts need the common frame of `gens`.
Classification classify_frames(const std::vector<Mat2>& gens, const std::vector<Mat2>& single, double tol) {
  Classification c;
  c.trivial_margin = 0.0;
  for (const auto& M : single) c.trivial_margin = std::max(c.trivial_margin, scalar_defect(M));
  c.trivial_pgl2 = decide(c.trivial_margin, tol);

  for (const auto& M : single) {
    const cplx tr = M.trace();
    const double tdef = std::min(std::abs(tr - 2.0), std::abs(tr + 2.0));
    const Verdict on_trace = decide(tdef, tol);
    const Verdict scalar = decide(scalar_defect(M), tol);
    if (scalar == Verdict::Yes || on_trace == Verdict::No) {
      c.unipotent.push_back(Verdict::No);
    } else if (on_trace == Verdict::Yes && scalar == Verdict::No) {
      c.unipotent.push_back(Verdict::Yes);
    } else {
      c.unipotent.push_back(Verdict::Ambiguous);
    }
  }

  // Common eigenvector: candidates are the eigenvectors of the least scalar generator.
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Mat2 M = gens[k] - 0.5 * gens[k].trace() * Mat2::Identity();
    if (M.norm() > best) {
      best = M.norm();
      pivot = k;
    }
  }
  if (gens.empty() || best <= tol / 10) {
    c.solvable_margin = 0.0;
  } else {
    Eigen::ComplexEigenSolver<Mat2> es(gens[pivot]);
    c.solvable_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2cd v = es.eigenvectors().col(k).normalized();
      double worst = 0.0;
      for (const auto& M : gens) {
        const Eigen::Vector2cd w = M * v;
        worst = std::max(worst, (w - v * v.dot(w)).norm() / std::max(1.0, M.norm()));
      }
      c.solvable_margin = std::min(c.solvable_margin, worst);
    }
  }
  c.solvable = decide(c.solvable_margin, tol);

  // Hermitian h = [[a, b + i d], [b - i d, e]] with M^* h M = h, as a real linear system in (a, b, d, e).
  if (gens.empty()) {
    c.real_form = Verdict::Yes;
    c.form = Mat2::Identity();
    c.signature = {2, 0};
  } else {
    Eigen::MatrixXd A(8 * Eigen::Index(gens.size()), 4);
    std::array<Mat2, 4> basis;
    basis[0] << 1.0, 0.0, 0.0, 0.0;
    basis[1] << 0.0, 1.0, 1.0, 0.0;
    basis[2] << 0.0, cplx(0, 1), cplx(0, -1), 0.0;
    basis[3] << 0.0, 0.0, 0.0, 1.0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const Mat2& M = gens[g];
      const double s = 1.0 / std::max(1.0, M.squaredNorm());
      for (int k = 0; k < 4; ++k) {
        const Mat2 E = (M.adjoint() * basis[std::size_t(k)] * M - basis[std::size_t(k)]) * s;
        for (int r = 0; r < 4; ++r) {
          A(8 * Eigen::Index(g) + 2 * r, k) = E(r / 2, r % 2).real();
          A(8 * Eigen::Index(g) + 2 * r + 1, k) = E(r / 2, r % 2).imag();
        }
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    c.real_margin = sv(3);
    // Among near-null directions choose the least degenerate form.
    double det_best = -1.0;
    for (int k = 3; k >= 0; --k) {
      if (sv(k) > std::max(10 * tol, sv(3) * 10)) break;
      const Eigen::Vector4d x = svd.matrixV().col(k);
      Mat2 h = Mat2::Zero();
      for (int j = 0; j < 4; ++j) h += x(j) * basis[std::size_t(j)];
      const double d = std::abs(h.determinant());
      if (d > det_best) {
        det_best = d;
        c.form = h;
      }
    }
    Eigen::SelfAdjointEigenSolver<Mat2> es(c.form);
    int pos = 0, neg = 0;
    for (int k = 0; k < 2; ++k) {
      if (es.eigenvalues()(k) > 1e-8) ++pos;
      if (es.eigenvalues()(k) < -1e-8) ++neg;
    }
    c.signature = {pos, neg};
    c.real_form = decide(c.real_margin, tol);
    if (pos + neg < 2 && c.real_form == Verdict::Yes) c.real_form = Verdict::Ambiguous;
  }

  c.generic = c.trivial_pgl2 == Verdict::No && c.solvable == Verdict::No && c.real_form == Verdict::No &&
              std::all_of(c.unipotent.begin(), c.unipotent.end(), [](Verdict v) { return v == Verdict::No; });
  return c;
}

}  // namespace

Classification classify(const std::vector<Mat2>& generators, double tol) {
  return classify_frames(generators, generators, tol);
}

Classification classify(const MonodromyData& mono, double tol) {
  return classify_frames(mono.generators, mono.local.size() == mono.generators.size() ? mono.local : mono.generators,
                         tol);
}

Mat2 principal_value_transport(const Oper& oper, std::size_t j, double a, double b, double radius,
                               const TransportOptions& opts) {
  const double tj = oper.t.at(j).real();
  if (!(a < tj - radius && tj + radius < b)) fail(ErrorKind::PreconditionViolation, "need a < t_j - r < t_j + r < b");
  const cplx c(tj, 0.0);
  const std::vector<PathPiece> upper{PathPiece::line(a, tj - radius), PathPiece::arc(c, radius, M_PI, 0.0),
                                     PathPiece::line(tj + radius, b)};
  const std::vector<PathPiece> lower{PathPiece::line(a, tj - radius), PathPiece::arc(c, radius, M_PI, 2 * M_PI),
                                     PathPiece::line(tj + radius, b)};
  return -0.5 * (transport(oper, upper, opts) + transport(oper, lower, opts));
}

}  // namespace operlab
