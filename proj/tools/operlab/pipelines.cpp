#include <algorithm>
#include <cmath>

#include "cli.hpp"
#include "operlab/balanced.hpp"
#include "operlab/bethe.hpp"
#include "operlab/chiral.hpp"
#include "operlab/errors.hpp"
#include "operlab/gaudin.hpp"
#include "operlab/hecke.hpp"
#include "operlab/monodromy.hpp"
#include "operlab/oper.hpp"

namespace operlab::cli {

namespace {

Record complex_list(const std::vector<cplx>& v, bool imag) {
  Record a = Record::array();
  for (const auto& z : v) a.push_back(imag ? z.imag() : z.real());
  return a;
}

void put_complex(Record& r, const std::string& key, const std::vector<cplx>& v) {
  r[key + "_re"] = complex_list(v, false);
  r[key + "_im"] = complex_list(v, true);
}

Record scenario_record(const Scenario& s) {
  Record r;
  r["record"] = "scenario";
  r["pipeline"] = to_string(s.kind);
  r["seed"] = s.seed;
  Record tol;
  tol["diagonalize"] = s.knobs.tol;
  tol["bae"] = s.knobs.bae_tol;
  tol["ode"] = s.knobs.ode_tol;
  tol["classify"] = s.knobs.classify_tol;
  r["tolerances"] = tol;
  if (s.has_config) {
    put_complex(r, "t", s.config.t);
    put_complex(r, "lambda", s.config.lambda);
    r["n"] = s.config.n;
  }
  return r;
}

BetheOptions bethe_options(const Scenario& s) {
  BetheOptions o;
  o.tol = s.knobs.bae_tol;
  o.seeds = s.knobs.seeds;
  o.seed = s.seed;
  o.jobs = s.jobs;
  return o;
}

bool use_caps(const Scenario& s) {
  if (s.knobs.capped == "true") return true;
  if (s.knobs.capped == "false") return false;
  return dominant_integral(s.config);
}

GaudinMatrices matrices(const Scenario& s, const WeightSector& sector) {
  if (s.exact) return to_complex(gaudin_matrices(*s.exact, sector));
  return gaudin_matrices(s.config, sector);
}

std::vector<cplx> explicit_mu(const Scenario& s) {
  std::vector<cplx> mu;
  for (const auto& v : s.knobs.mu) mu.emplace_back(std::stod(v), 0.0);
  return mu;
}

void spectrum(const Scenario& s, Results& out) {
  const bool capped = use_caps(s);
  const auto sector = build_sector(s.config, capped);
  const auto mats = matrices(s, sector);
  Record sec;
  sec["record"] = "sector";
  sec["dim"] = sector.dim();
  sec["capped"] = capped;
  sec["max_commutator"] = max_commutator(mats);
  out.records.push_back(sec);
  if (sector.dim() == 0) return;

  DiagonalizeOptions o;
  o.tol = s.knobs.tol;
  o.draws = s.knobs.draws;
  o.seed = s.seed;
  const auto spec = joint_diagonalize(mats, o);
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    Record r;
    r["record"] = "eigenvalue";
    r["index"] = k;
    put_complex(r, "mu", spec.eigenvalues[k]);
    r["multiplicity"] = spec.multiplicities[k];
    r["residual"] = spec.residuals[k];
    out.records.push_back(r);
  }
  Record sum;
  sum["record"] = "spectrum";
  sum["min_gap"] = spec.min_gap;
  sum["cross_check"] = spec.cross_check;
  out.records.push_back(sum);
}

BetheReport bethe_report(const Scenario& s, Results& out) {
  const auto rep = solve_bae_report(s.config, bethe_options(s));
  Record r;
  r["record"] = "bethe_summary";
  r["expected"] = rep.expected;
  r["found"] = rep.solutions.size();
  r["escapes"] = rep.escapes;
  r["complete"] = rep.solutions.size() == rep.expected;
  out.records.push_back(r);
  return rep;
}

void bethe(const Scenario& s, Results& out) {
  const auto rep = bethe_report(s, out);
  for (std::size_t k = 0; k < rep.solutions.size(); ++k) {
    const auto& sol = rep.solutions[k];
    Record r;
    r["record"] = "bethe_solution";
    r["index"] = k;
    put_complex(r, "w", sol.w);
    r["residual"] = sol.residual;
    put_complex(r, "mu", bethe_eigenvalues(sol.w, s.config));
    out.records.push_back(r);
  }
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

std::vector<cplx> monic(const std::vector<cplx>& w) {
  std::vector<cplx> q{1.0};
  for (const auto& r : w) {
    q.push_back(0.0);
    for (std::size_t k = q.size() - 1; k > 0; --k) q[k] -= r * q[k - 1];
  }
  return q;
}

void oper_verify(const Scenario& s, Results& out) {
  const auto rep = bethe_report(s, out);
  for (std::size_t k = 0; k < rep.solutions.size(); ++k) {
    const auto& w = rep.solutions[k].w;
    const Oper L = miura(s.config, w);
    const auto cons = oper_constraints(L.t, L.lambda, L.mu);
    const auto mu = bethe_eigenvalues(w, s.config);
    std::vector<cplx> dmu(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) dmu[i] = mu[i] - L.mu[i];
    const auto q = q_polynomial(L);
    const auto qw = monic(w);
    double qdev = 0.0;
    for (std::size_t i = 0; i < q.size() && i < qw.size(); ++i) qdev = std::max(qdev, std::abs(q[i] - qw[i]));
    Record r;
    r["record"] = "oper";
    r["index"] = k;
    put_complex(r, "mu", L.mu);
    r["sum_residual"] = cons.sum;
    r["moment_residual"] = cons.moment;
    r["miura_residue"] = max_abs(miura_residues_at_roots(s.config, w));
    r["q_deviation"] = qdev;
    r["mu_deviation"] = max_abs(dmu);
    out.records.push_back(r);
  }

  const auto sector = build_sector(s.config, use_caps(s));
  if (sector.dim() == 0) return;
  const auto mats = matrices(s, sector);
  const QOperator Q = s.exact ? to_complex(baxter_q(gaudin_matrices(*s.exact, sector))) : baxter_q(mats);
  cplx centre = 0.0;
  double spread = 0.0;
  for (const auto& t : s.config.t) centre += t / double(s.config.t.size());
  for (const auto& t : s.config.t) spread = std::max(spread, std::abs(t - centre));
  std::vector<cplx> stencil;
  for (int k = 0; k < 5; ++k)
    stencil.push_back(centre + (spread + 1.0) * std::polar(0.7, 0.4 + 1.1 * k));
  const double uni = universal_oper_residual([&](cplx x) { return to_eigen(Q(x)); }, mats, stencil,
                                             s.knobs.stencil_h);
  Record r;
  r["record"] = "baxter_q";
  r["dim"] = sector.dim();
  r["residual"] = Q.residual;
  r["universal_residual"] = uni;
  out.records.push_back(r);
}

Record classification_record(const Classification& c) {
  Record r;
  r["trivial_pgl2"] = to_string(c.trivial_pgl2);
  Record u = Record::array();
  for (auto v : c.unipotent) u.push_back(to_string(v));
  r["unipotent"] = u;
  r["solvable"] = to_string(c.solvable);
  r["real_form"] = to_string(c.real_form);
  r["generic"] = c.generic;
  r["trivial_margin"] = c.trivial_margin;
  r["solvable_margin"] = c.solvable_margin;
  r["real_margin"] = c.real_margin;
  r["signature"] = Record::array({c.signature.first, c.signature.second});
  return r;
}

void monodromy(const Scenario& s, Results& out) {
  std::vector<Oper> opers;
  if (!s.knobs.mu.empty()) {
    opers.push_back(oper_from_mu(s.config, explicit_mu(s)));
  } else {
    const auto rep = bethe_report(s, out);
    for (const auto& sol : rep.solutions) opers.push_back(miura(s.config, sol.w));
  }
  LoopPolicy policy;
  policy.transport.tol = s.knobs.ode_tol;
  for (std::size_t k = 0; k < opers.size(); ++k) {
    const auto mono = monodromy_generators(opers[k], policy);
    Record r;
    r["record"] = "monodromy";
    r["index"] = k;
    put_complex(r, "mu", opers[k].mu);
    r["pi1_residual"] = mono.pi1_residual;
    r["det_deviation"] = mono.det_deviation;
    const Record cls = classification_record(classify(mono, s.knobs.classify_tol));
    for (const auto& [key, v] : cls.items()) r[key] = v;
    out.records.push_back(r);
  }
}

void balanced_scan(const Scenario& s, Results& out) {
  RealPointConfig cfg;
  cfg.t = s.balanced.t;
  for (double c : s.balanced.c_imag) cfg.c.emplace_back(0.0, c);
  TransportOptions topts;
  topts.tol = s.knobs.ode_tol;
  const auto scan = find_balanced_4pt(cfg, s.balanced.lo, s.balanced.hi, s.balanced.step, s.balanced.a_tol, topts);
  for (std::size_t k = 0; k < scan.candidates.size(); ++k) {
    Record r;
    r["record"] = "candidate";
    r["mu0"] = scan.candidates[k];
    r["a"] = scan.a_at_candidates[k];
    r["scan_step"] = scan.step;
    r["hit"] = std::find(scan.hits.begin(), scan.hits.end(), scan.candidates[k]) != scan.hits.end();
    out.records.push_back(r);
  }
  for (double mu0 : scan.hits) {
    const auto d = balance_check(balanced_oper(cfg, mu0), topts);
    Record r;
    r["record"] = "balanced";
    r["mu0"] = mu0;
    r["a"] = d.a;
    r["b"] = d.b;
    Record w = Record::array();
    for (const auto& iv : d.intervals) w.push_back(iv.wronskian);
    r["wronskian"] = w;
    r["product_residual"] = d.product_residual;
    r["trace_residual"] = d.trace_residual;
    out.records.push_back(r);
  }
}

void hecke_scan_pipeline(const Scenario& s, Results& out) {
  const auto& h = s.hecke;
  if (h.mode == "3pt") {
    for (double x : h.x) {
      const auto v = hecke_3pt(cplx(0, h.a), cplx(0, h.b), cplx(0, h.c), x);
      Record r;
      r["record"] = "hecke_3pt";
      r["x"] = x;
      r["value_re"] = v.value.real();
      r["value_im"] = v.value.imag();
      r["prediction_re"] = v.prediction.real();
      r["prediction_im"] = v.prediction.imag();
      r["Q_plus_re"] = v.Q_plus.real();
      r["Q_plus_im"] = v.Q_plus.imag();
      r["R_minus_re"] = v.R_minus.real();
      r["R_minus_im"] = v.R_minus.imag();
      r["relative_error"] = v.relative_error;
      out.records.push_back(r);
    }
    return;
  }
  if (!dominant_integral(s.config))
    fail(ErrorKind::PreconditionViolation, "beta scan needs dominant integral weights");
  const auto rep = bethe_report(s, out);
  if (std::size_t(h.solution) >= rep.solutions.size())
    fail(ErrorKind::Incomplete, "hecke.solution exceeds the number of Bethe solutions found");
  const auto& w = rep.solutions[std::size_t(h.solution)].w;
  const QData d = qdata_from_roots(s.config, w);
  const Grid grid{h.re_lo, h.re_hi, h.im_lo, h.im_hi, h.nx, h.ny};
  const auto scan = hecke_scan(d, grid, s.jobs);

  CsvGrid csv;
  csv.name = "beta_" + std::to_string(h.solution);
  csv.columns = {"x_re", "x_im", "beta"};
  double worst = 0.0;
  for (std::size_t k = 0; k < scan.x.size(); ++k) {
    csv.rows.push_back({scan.x[k].real(), scan.x[k].imag(), scan.beta[k]});
    worst = std::max(worst, scan.path_residual[k]);
  }
  out.grids.push_back(csv);

  Record r;
  r["record"] = "beta_scan";
  r["solution"] = h.solution;
  put_complex(r, "w", w);
  r["basepoint"] = scan.basepoint;
  r["normalization"] = scan.normalization;
  r["points"] = scan.x.size();
  r["max_path_residual"] = worst;
  r["grid"] = "grids/" + csv.name + ".csv";
  out.records.push_back(r);

  // Normal derivative at the midpoints of the bounded intervals.
  std::vector<double> ts;
  for (const auto& t : s.config.t) ts.push_back(t.real());
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double x = 0.5 * (ts[i] + ts[i + 1]);
    bool clear = true;
    for (const auto& root : w) clear = clear && std::abs(root - x) > 1e-2;
    if (!clear) continue;
    Record nd;
    nd["record"] = "normal_derivative";
    nd["x"] = x;
    nd["measured"] = beta_normal_derivative(d, x, scan.basepoint);
    nd["expected"] = beta_wronskian_constant(d, x);
    out.records.push_back(nd);
  }
  if (h.pde) {
    const auto pr = beta_pde_residual(d, miura(s.config, w), grid, h.pde_h, s.jobs);
    Record p;
    p["record"] = "beta_pde";
    p["holomorphic"] = pr.holomorphic;
    p["antiholomorphic"] = pr.antiholomorphic;
    out.records.push_back(p);
  }
}

void chiral_check(const Scenario& s, Results& out) {
  const auto& cfg = *s.exact;
  std::vector<Rational> xs;
  for (const auto& v : s.chiral.x) xs.push_back(parse_rational(v));
  const auto f = chiral_factorization(cfg, xs);
  Record r;
  r["record"] = "chiral";
  r["r"] = chiral_r(cfg);
  r["kappa"] = f.kappa.get_str();
  r["exact"] = f.exact;
  r["checked"] = f.checked;
  out.records.push_back(r);

  const auto sector = build_sector(cfg, false);
  const int nv = int(cfg.t.size());
  for (std::size_t k = 0; k < sector.dim(); ++k) {
    const auto p = chiral_restriction(sector.basis_polynomial<Rational>(k), cfg);
    int degree = -1;
    for (const auto& [mono, c] : p) {
      int d = 0;
      for (int e : mono) d += e;
      degree = std::max(degree, d);
    }
    Record e;
    e["record"] = "restriction";
    e["index"] = k;
    e["terms"] = p.size();
    e["degree"] = degree;
    e["translation_invariant"] = translation_invariant(p, nv);
    out.records.push_back(e);
  }
}

}  // namespace

Results run(const Scenario& s) {
  Results out;
  out.records.push_back(scenario_record(s));
  switch (s.kind) {
    case Pipeline::Spectrum: spectrum(s, out); break;
    case Pipeline::Bethe: bethe(s, out); break;
    case Pipeline::OperVerify: oper_verify(s, out); break;
    case Pipeline::Monodromy: monodromy(s, out); break;
    case Pipeline::BalancedScan: balanced_scan(s, out); break;
    case Pipeline::HeckeScan: hecke_scan_pipeline(s, out); break;
    case Pipeline::ChiralCheck: chiral_check(s, out); break;
  }
  return out;
}

}  // namespace operlab::cli
