#include "operlab/bethe.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "operlab/parallel.hpp"

namespace operlab {

BetheIncomplete::BetheIncomplete(std::vector<BetheRoots> found, std::size_t expected)
    : Error(ErrorKind::Incomplete,
            "found " + std::to_string(found.size()) + " Bethe solutions, expected " + std::to_string(expected)),
      found_(std::move(found)),
      expected_(expected) {}

namespace {

struct System {
  std::vector<cplx> t;
  std::vector<cplx> lambda;  // finite weights only
};

System system_of(const GaudinConfig& c) {
  return {c.t, std::vector<cplx>(c.lambda.begin(), c.lambda.end() - 1)};
}

std::vector<cplx> residual(const System& S, const std::vector<cplx>& w) {
  const std::size_t n = w.size();
  std::vector<cplx> F(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < S.t.size(); ++i) F[j] += S.lambda[i] / (w[j] - S.t[i]);
    for (std::size_t s = 0; s < n; ++s)
      if (s != j) F[j] -= 2.0 / (w[j] - w[s]);
  }
  return F;
}

// max_j |F_j| / (sum of |terms|)
double relative_residual(const System& S, const std::vector<cplx>& w) {
  const std::size_t n = w.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx f = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < S.t.size(); ++i) {
      const cplx term = S.lambda[i] / (w[j] - S.t[i]);
      f += term;
      scale += std::abs(term);
    }
    for (std::size_t s = 0; s < n; ++s)
      if (s != j) {
        const cplx term = 2.0 / (w[j] - w[s]);
        f -= term;
        scale += std::abs(term);
      }
    worst = std::max(worst, std::abs(f) / std::max(scale, 1e-300));
  }
  return worst;
}

Eigen::MatrixXcd jacobian(const System& S, const std::vector<cplx>& w) {
  const Eigen::Index n = Eigen::Index(w.size());
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < S.t.size(); ++i) {
      const cplx d = w[j] - S.t[i];
      J(j, j) -= S.lambda[i] / (d * d);
    }
    for (Eigen::Index s = 0; s < n; ++s) {
      if (s == j) continue;
      const cplx d = w[j] - w[s];
      const cplx v = 2.0 / (d * d);
      J(j, j) += v;
      J(j, s) -= v;
    }
  }
  return J;
}

double norm_of(const std::vector<cplx>& v) {
  double s = 0.0;
  for (auto x : v) s += std::norm(x);
  return std::sqrt(s);
}

double min_separation(const System& S, const std::vector<cplx>& w) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (auto t : S.t) d = std::min(d, std::abs(w[j] - t));
    for (std::size_t s = j + 1; s < w.size(); ++s) d = std::min(d, std::abs(w[j] - w[s]));
  }
  return d;
}

bool newton(const System& S, std::vector<cplx>& w, double tol, int max_iter) {
  std::vector<cplx> F = residual(S, w);
  double fn = norm_of(F);
  for (int it = 0; it < max_iter; ++it) {
    if (relative_residual(S, w) < tol) return true;
    Eigen::VectorXcd rhs(Eigen::Index(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j) rhs(Eigen::Index(j)) = -F[j];
    const Eigen::VectorXcd dx = jacobian(S, w).partialPivLu().solve(rhs);
    if (!dx.allFinite()) return false;
    double alpha = 1.0;
    bool accepted = false;
    while (alpha > 1e-4) {
      std::vector<cplx> trial = w;
      for (std::size_t j = 0; j < w.size(); ++j) trial[j] += alpha * dx(Eigen::Index(j));
      const auto Ft = residual(S, trial);
      const double ft = norm_of(Ft);
      if (std::isfinite(ft) && ft < (1.0 - 0.25 * alpha) * fn) {
        w = std::move(trial);
        F = Ft;
        fn = ft;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return relative_residual(S, w) < tol;
  }
  return relative_residual(S, w) < tol;
}

bool tuple_less(const cplx& a, const cplx& b) {
  if (std::abs(a.real() - b.real()) > 1e-12) return a.real() < b.real();
  return a.imag() < b.imag();
}

void sort_roots(std::vector<cplx>& w) { std::sort(w.begin(), w.end(), tuple_less); }

bool same_multiset(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (auto x : a) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!used[k] && std::abs(x - b[k]) <= tol * std::max(1.0, std::abs(x))) {
        used[k] = hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool valid(const System& S, const std::vector<cplx>& w, double tol) {
  for (auto x : w)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return min_separation(S, w) > 1e-7 && relative_residual(S, w) < tol;
}

void merge(std::vector<BetheRoots>& acc, std::vector<cplx> w, const System& S, double dedup) {
  sort_roots(w);
  for (const auto& r : acc)
    if (same_multiset(r.w, w, dedup)) return;
  BetheRoots r;
  r.residual = 0.0;
  for (auto f : residual(S, w)) r.residual = std::max(r.residual, std::abs(f));
  r.w = std::move(w);
  acc.push_back(std::move(r));
}

// Compositions of n into k non-negative parts.
void compositions(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (k == 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = n; a >= 0; --a) {
    cur.push_back(a);
    compositions(n - a, k - 1, cur, out);
    cur.pop_back();
  }
}

struct Homotopy {
  System ref, target;
  std::vector<cplx> dl, dt;  // gamma-trick bend directions
  System at(double s) const {
    System S = target;
    const double bend = s * (1.0 - s);
    for (std::size_t i = 0; i < S.t.size(); ++i) {
      S.t[i] = ref.t[i] + (target.t[i] - ref.t[i]) * s + dt[i] * bend;
      S.lambda[i] = ref.lambda[i] + (target.lambda[i] - ref.lambda[i]) * s + dl[i] * bend;
    }
    return S;
  }
  // dF/ds at fixed w.
  Eigen::VectorXcd ds(double s, const std::vector<cplx>& w) const {
    const System S = at(s);
    const double dbend = 1.0 - 2.0 * s;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t i = 0; i < S.t.size(); ++i) {
        const cplx lp = target.lambda[i] - ref.lambda[i] + dl[i] * dbend;
        const cplx tp = target.t[i] - ref.t[i] + dt[i] * dbend;
        const cplx d = w[j] - S.t[i];
        out(Eigen::Index(j)) += lp / d + S.lambda[i] * tp / (d * d);
      }
    return out;
  }
};

// Returns false on escape.
bool track(const Homotopy& H, std::vector<cplx>& w) {
  double s = 0.0, h = 0.02;
  while (s < 1.0) {
    if (h < 1e-10) return false;
    const double step = std::min(h, 1.0 - s);
    const System S0 = H.at(s);
    Eigen::VectorXcd rhs = -H.ds(s, w);
    const Eigen::VectorXcd dw = jacobian(S0, w).partialPivLu().solve(rhs);
    std::vector<cplx> trial = w;
    for (std::size_t j = 0; j < w.size(); ++j) trial[j] += step * dw(Eigen::Index(j));
    const System S1 = H.at(s + step);
    bool ok = false;
    double first = 0.0;
    for (int it = 0; it < 6; ++it) {
      const auto F = residual(S1, trial);
      Eigen::VectorXcd r(Eigen::Index(w.size()));
      for (std::size_t j = 0; j < w.size(); ++j) r(Eigen::Index(j)) = -F[j];
      const Eigen::VectorXcd dx = jacobian(S1, trial).partialPivLu().solve(r);
      if (!dx.allFinite()) break;
      double scale = 1.0;
      for (auto x : trial) scale = std::max(scale, std::abs(x));
      const double dn = dx.norm();
      if (it == 0) first = dn;
      for (std::size_t j = 0; j < w.size(); ++j) trial[j] += dx(Eigen::Index(j));
      if (it == 0 && dn > 0.1 * std::max(min_separation(S1, trial), 1e-12)) break;
      if (dn < 1e-11 * scale) {
        ok = true;
        break;
      }
    }
    (void)first;
    if (ok && min_separation(S1, trial) > 1e-9) {
      double big = 0.0;
      for (auto x : trial) big = std::max(big, std::abs(x));
      if (big > 1e8) return false;
      w = std::move(trial);
      s += step;
      h = std::min(h * 1.6, 0.05);
    } else {
      h *= 0.5;
    }
  }
  return true;
}

std::vector<cplx> poly_mul_linear(const std::vector<cplx>& p, cplx root) {
  // p ascending coefficients; returns p(x)(x - root)
  std::vector<cplx> out(p.size() + 1, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k + 1] += p[k];
    out[k] -= root * p[k];
  }
  return out;
}

std::vector<cplx> poly_roots(std::vector<cplx> c) {
  // ascending coefficients
  double scale = 0.0;
  for (auto x : c) scale = std::max(scale, std::abs(x));
  while (!c.empty() && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
  if (c.size() <= 1) return {};
  const Eigen::Index d = Eigen::Index(c.size()) - 1;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 1; k < d; ++k) C(k, k - 1) = 1.0;
  for (Eigen::Index k = 0; k < d; ++k) C(k, d - 1) = -c[std::size_t(k)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> out;
  for (Eigen::Index k = 0; k < d; ++k) out.push_back(es.eigenvalues()(k));
  return out;
}

}  // namespace

std::vector<cplx> bae_residual(const GaudinConfig& config, const std::vector<cplx>& w) {
  return residual(system_of(config), w);
}

std::size_t expected_solution_count(const GaudinConfig& config) {
  if (config.n == 0) return 1;
  if (dominant_integral(config)) return build_sector(config, true).dim();
  return std::size_t(binomial(config.n + config.m() - 1, config.m() - 1));
}

bool polish_roots(const GaudinConfig& config, std::vector<cplx>& w, double tol, int max_iter) {
  const System S = system_of(config);
  return newton(S, w, tol, max_iter) && valid(S, w, std::max(tol, 1e-8));
}

BetheReport solve_bae_report(const GaudinConfig& config, const BetheOptions& opts) {
  validate(config);
  const System S = system_of(config);
  const int n = config.n;
  const int m = config.m();
  BetheReport rep;
  rep.expected = expected_solution_count(config);
  const double accept = std::max(opts.tol, 1e-12) * 100.0;
  if (n == 0) {
    rep.solutions.push_back(BetheRoots{});
    return rep;
  }
  if (n == 1) {
    std::vector<cplx> P(1, 0.0);
    for (int i = 0; i <= m; ++i) {
      std::vector<cplx> term{S.lambda[std::size_t(i)]};
      for (int k = 0; k <= m; ++k)
        if (k != i) term = poly_mul_linear(term, S.t[std::size_t(k)]);
      P.resize(std::max(P.size(), term.size()), 0.0);
      for (std::size_t a = 0; a < term.size(); ++a) P[a] += term[a];
    }
    for (auto r : poly_roots(P)) {
      std::vector<cplx> w{r};
      newton(S, w, opts.tol, 20);
      if (valid(S, w, accept)) {
        merge(rep.solutions, w, S, opts.dedup);
      } else {
        ++rep.escapes;
      }
    }
  } else {
    if (opts.homotopy && m >= 1) {
      // Discrete-series reference: lambda_i = -2 at t_i = 0..m, one real solution per interval filling.
      std::vector<std::size_t> order(std::size_t(m + 1));
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return tuple_less(S.t[a], S.t[b]); });
      Homotopy H;
      H.target = S;
      H.ref = S;
      for (std::size_t r = 0; r < order.size(); ++r) {
        H.ref.t[order[r]] = double(r);
        H.ref.lambda[order[r]] = -2.0;
      }
      std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
      std::normal_distribution<double> N(0.0, 1.0);
      for (int i = 0; i <= m; ++i) {
        H.dl.emplace_back(N(rng), N(rng));
        H.dt.emplace_back(0.5 * N(rng), 0.5 * N(rng));
      }
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(n, m, cur, comps);
      std::vector<std::vector<cplx>> ends(comps.size());
      std::vector<char> ok(comps.size(), 0);
      parallel_for(comps.size(), opts.jobs, [&](std::size_t c) {
        std::vector<cplx> w;
        for (int interval = 0; interval < m; ++interval) {
          const int k = comps[c][std::size_t(interval)];
          for (int a = 1; a <= k; ++a) w.emplace_back(interval + double(a) / (k + 1), 0.0);
        }
        if (!newton(H.ref, w, 1e-13, 200)) return;
        if (!track(H, w)) return;
        if (newton(S, w, opts.tol, 50) && valid(S, w, accept)) {
          ends[c] = w;
          ok[c] = 1;
        }
      });
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (ok[c]) {
          merge(rep.solutions, ends[c], S, opts.dedup);
        } else {
          ++rep.escapes;
        }
      }
    }
    if (rep.solutions.size() < rep.expected) {
      double R = 1.0;
      cplx centre = 0.0;
      for (auto t : S.t) centre += t / double(S.t.size());
      for (auto t : S.t) R = std::max(R, 1.5 * std::abs(t - centre));
      std::vector<std::vector<cplx>> ends(std::size_t(std::max(opts.seeds, 0)));
      std::vector<char> ok(ends.size(), 0);
      parallel_for(ends.size(), opts.jobs, [&](std::size_t k) {
        std::mt19937_64 rng(opts.seed + 7919 * (k + 1));
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        std::vector<cplx> w;
        for (int j = 0; j < n; ++j) w.push_back(centre + R * cplx(U(rng), U(rng)));
        if (newton(S, w, opts.tol, 300) && valid(S, w, accept)) {
          ends[k] = w;
          ok[k] = 1;
        }
      });
      for (std::size_t k = 0; k < ends.size(); ++k)
        if (ok[k]) merge(rep.solutions, ends[k], S, opts.dedup);
    }
  }
  std::sort(rep.solutions.begin(), rep.solutions.end(), [](const BetheRoots& a, const BetheRoots& b) {
    for (std::size_t k = 0; k < a.w.size(); ++k) {
      if (std::abs(a.w[k] - b.w[k]) > 1e-9) return tuple_less(a.w[k], b.w[k]);
    }
    return false;
  });
  return rep;
}

std::vector<BetheRoots> solve_bae(const GaudinConfig& config, const BetheOptions& opts) {
  auto rep = solve_bae_report(config, opts);
  if (rep.solutions.size() < rep.expected) throw BetheIncomplete(std::move(rep.solutions), rep.expected);
  return std::move(rep.solutions);
}

Polynomial<cplx> bethe_polynomial(const std::vector<cplx>& w, const GaudinConfig& config) {
  const int nvars = config.m() + 1;
  Polynomial<cplx> p{{Monomial(std::size_t(nvars), 0), cplx(1.0)}};
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Polynomial<cplx> next;
    for (int i = 0; i < nvars; ++i) {
      const auto fi = apply_generator(Generator::F, i, config.lambda[std::size_t(i)], p);
      add_into(next, fi, 1.0 / (*it - config.t[std::size_t(i)]));
    }
    p = std::move(next);
  }
  return p;
}

Eigen::VectorXcd bethe_vector(const std::vector<cplx>& w, const GaudinConfig& config, const WeightSector& sector) {
  if (int(w.size()) != config.n || sector.n != config.n)
    fail(ErrorKind::PreconditionViolation, "root count must equal n");
  const auto p = bethe_polynomial(w, config);
  double scale = 1.0, big = 0.0;
  for (auto x : w) {
    double s = 0.0;
    for (std::size_t i = 0; i < config.t.size(); ++i) s += std::abs(config.lambda[i]) / std::abs(x - config.t[i]);
    scale *= std::max(s, 1e-300);
  }
  for (const auto& [mono, c] : p) big = std::max(big, std::abs(c));
  if (big <= 1e-12 * scale) fail(ErrorKind::ZeroVector, "Bethe vector vanishes");
  const auto coords = sector.coordinates(p);
  Eigen::VectorXcd v(Eigen::Index(coords.size()));
  for (std::size_t k = 0; k < coords.size(); ++k) v(Eigen::Index(k)) = coords[k];
  if (v.norm() <= 1e-12 * scale) fail(ErrorKind::ZeroVector, "Bethe vector has no component in the sector");
  return v;
}

std::vector<cplx> bethe_eigenvalues(const std::vector<cplx>& w, const GaudinConfig& config) {
  const int m = config.m();
  std::vector<cplx> mu(std::size_t(m + 1), 0.0);
  for (int i = 0; i <= m; ++i) {
    cplx s = 0.0;
    for (int k = 0; k <= m; ++k)
      if (k != i) s += config.lambda[std::size_t(k)] / (2.0 * (config.t[std::size_t(i)] - config.t[std::size_t(k)]));
    for (auto x : w) s -= 1.0 / (config.t[std::size_t(i)] - x);
    mu[std::size_t(i)] = config.lambda[std::size_t(i)] * s;
  }
  return mu;
}

}  // namespace operlab
