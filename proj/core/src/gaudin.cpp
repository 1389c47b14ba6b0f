#include "operlab/gaudin.hpp"

#include <algorithm>
#include <random>
#include <limits>
#include <sstream>
#include <type_traits>

#include "operlab/errors.hpp"

namespace operlab {

namespace {

template <class T>
void add_term(Polynomial<T>& out, Monomial mono, const std::type_identity_t<T>& c) {
  if (c == T(0)) return;
  auto it = out.find(mono);
  if (it == out.end()) {
    out.emplace(std::move(mono), c);
  } else {
    it->second += c;
  }
}

template <class T>
void prune(Polynomial<T>& p) {
  for (auto it = p.begin(); it != p.end();) it = (it->second == T(0)) ? p.erase(it) : std::next(it);
}

}  // namespace

template <class T>
Polynomial<T> apply_omega(int i, int j, const T& li, const T& lj, const Polynomial<T>& p) {
  Polynomial<T> out;
  const T half = from_rational<T>(Rational(1, 2));
  for (const auto& [mono, c] : p) {
    const int ki = mono[i], kj = mono[j];
    // -(y_i - y_j)^2 d_i d_j
    if (ki > 0 && kj > 0) {
      Monomial b = mono;
      b[i] -= 1;
      b[j] -= 1;
      const T k = c * from_int<T>(long(ki) * kj);
      Monomial m1 = b, m2 = b, m3 = b;
      m1[i] += 2;
      m2[i] += 1;
      m2[j] += 1;
      m3[j] += 2;
      add_term(out, m1, -k);
      add_term(out, m2, k * from_int<T>(2));
      add_term(out, m3, -k);
    }
    // (y_i - y_j) lambda_i d_j
    if (kj > 0) {
      Monomial b = mono;
      b[j] -= 1;
      const T k = c * li * from_int<T>(kj);
      Monomial m1 = b, m2 = b;
      m1[i] += 1;
      m2[j] += 1;
      add_term(out, m1, k);
      add_term(out, m2, -k);
    }
    // -(y_i - y_j) lambda_j d_i
    if (ki > 0) {
      Monomial b = mono;
      b[i] -= 1;
      const T k = c * lj * from_int<T>(ki);
      Monomial m1 = b, m2 = b;
      m1[i] += 1;
      m2[j] += 1;
      add_term(out, m1, -k);
      add_term(out, m2, k);
    }
    add_term(out, mono, c * li * lj * half);
  }
  prune(out);
  return out;
}

template <class T>
BasicGaudinMatrices<T> gaudin_matrices(const BasicGaudinConfig<T>& config, const WeightSector& sector) {
  validate(config);
  const int m = config.m();
  if (sector.m != m || sector.n != config.n) fail(ErrorKind::InvalidConfig, "sector does not match configuration");
  const std::size_t d = sector.dim();
  const T half = from_rational<T>(Rational(1, 2));
  BasicGaudinMatrices<T> out;
  out.t = config.t;
  out.lambda = config.lambda;
  out.n = config.n;
  for (int i = 0; i <= m; ++i) {
    DenseMatrix<T> G(d, d);
    T mu0(0);
    for (std::size_t col = 0; col < d; ++col) {
      const auto psi = sector.basis_polynomial<T>(col);
      Polynomial<T> acc;
      for (int j = 0; j <= m; ++j) {
        if (j == i) continue;
        const T w = T(1) / (config.t[i] - config.t[j]);
        add_into(acc, apply_omega(i, j, config.lambda[i], config.lambda[j], psi), w);
      }
      const auto coords = sector.coordinates(acc);
      for (std::size_t r = 0; r < d; ++r) G(r, col) = coords[r];
    }
    for (int j = 0; j <= m; ++j)
      if (j != i) mu0 += config.lambda[i] * config.lambda[j] * half / (config.t[i] - config.t[j]);
    DenseMatrix<T> Ghat = G - DenseMatrix<T>::identity(d).scaled(mu0);
    out.G.push_back(std::move(G));
    out.Ghat.push_back(std::move(Ghat));
    out.mu0.push_back(mu0);
  }
  return out;
}

template BasicGaudinMatrices<Rational> gaudin_matrices<Rational>(const RationalConfig&, const WeightSector&);
template BasicGaudinMatrices<cplx> gaudin_matrices<cplx>(const GaudinConfig&, const WeightSector&);
template Polynomial<Rational> apply_omega<Rational>(int, int, const Rational&, const Rational&,
                                                    const Polynomial<Rational>&);
template Polynomial<cplx> apply_omega<cplx>(int, int, const cplx&, const cplx&, const Polynomial<cplx>&);

GaudinMatrices to_complex(const RationalGaudinMatrices& mats) {
  GaudinMatrices out;
  auto conv = [](const DenseMatrix<Rational>& a) {
    DenseMatrix<cplx> b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = to_cplx(a(i, j));
    return b;
  };
  for (const auto& g : mats.G) out.G.push_back(conv(g));
  for (const auto& g : mats.Ghat) out.Ghat.push_back(conv(g));
  out.mu0 = to_cplx_vec(mats.mu0);
  out.t = to_cplx_vec(mats.t);
  out.lambda = to_cplx_vec(mats.lambda);
  out.n = mats.n;
  return out;
}

double max_commutator(const GaudinMatrices& mats) {
  double worst = 0.0;
  for (std::size_t i = 0; i < mats.G.size(); ++i)
    for (std::size_t j = i + 1; j < mats.G.size(); ++j) {
      const Eigen::MatrixXcd a = to_eigen(mats.G[i]), b = to_eigen(mats.G[j]);
      worst = std::max(worst, (a * b - b * a).norm());
    }
  return worst;
}

namespace {

bool tuple_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  constexpr double eps = 1e-9;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].real() - b[k].real()) > eps) return a[k].real() < b[k].real();
    if (std::abs(a[k].imag() - b[k].imag()) > eps) return a[k].imag() < b[k].imag();
  }
  return false;
}

double tuple_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

JointSpectrum one_draw(const std::vector<Eigen::MatrixXcd>& G, std::mt19937_64& rng, double tol) {
  const Eigen::Index d = G.front().rows();
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& g : G) C += U(rng) * g;
  const double scale = std::max(C.norm(), 1.0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
  if (es.info() != Eigen::Success) fail(ErrorKind::NonConvergence, "eigen-decomposition failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::MatrixXcd V = es.eigenvectors();
  for (Eigen::Index k = 0; k < d; ++k) V.col(k).normalize();

  // Near-coincident eigenvalues with nearly parallel eigenvectors signal a Jordan block.
  const double jordan_gap = 1e-5 * scale;
  std::vector<int> group(d, -1);
  int ngroups = 0;
  for (Eigen::Index a = 0; a < d; ++a) {
    if (group[a] >= 0) continue;
    group[a] = ngroups;
    std::vector<Eigen::Index> members{a};
    for (Eigen::Index b = a + 1; b < d; ++b)
      if (group[b] < 0 && std::abs(ev[b] - ev[a]) < jordan_gap) {
        group[b] = ngroups;
        members.push_back(b);
      }
    ++ngroups;
    if (members.size() > 1) {
      Eigen::MatrixXcd W(d, Eigen::Index(members.size()));
      for (std::size_t k = 0; k < members.size(); ++k) W.col(Eigen::Index(k)) = V.col(members[k]);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W);
      const double smin = svd.singularValues().tail(1)(0);
      if (smin < 1e-6) {
        std::ostringstream os;
        os << "Jordan block near eigenvalue " << ev[a] << " of the random combination (eigenvector overlap "
           << smin << ")";
        fail(ErrorKind::NonDiagonalizable, os.str());
      }
    }
  }

  // Multiplicity clusters.
  const double cluster_gap = tol * scale;
  std::vector<bool> used(d, false);
  JointSpectrum out;
  for (Eigen::Index a = 0; a < d; ++a) {
    if (used[a]) continue;
    std::vector<Eigen::Index> members{a};
    used[a] = true;
    for (Eigen::Index b = a + 1; b < d; ++b)
      if (!used[b] && std::abs(ev[b] - ev[a]) < cluster_gap) {
        used[b] = true;
        members.push_back(b);
      }
    Eigen::MatrixXcd W(d, Eigen::Index(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) W.col(Eigen::Index(k)) = V.col(members[k]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(W);
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, W.cols());
    std::vector<cplx> mu;
    for (const auto& g : G) mu.push_back((Q.adjoint() * g * Q).trace() / double(W.cols()));
    const Eigen::VectorXcd v = Q.col(0);
    double res = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i) res = std::max(res, (G[i] * v - mu[i] * v).norm());
    out.eigenvalues.push_back(mu);
    out.eigenvectors.push_back(v);
    out.multiplicities.push_back(int(members.size()));
    out.residuals.push_back(res);
  }

  std::vector<std::size_t> order(out.eigenvalues.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tuple_less(out.eigenvalues[a], out.eigenvalues[b]); });
  JointSpectrum sorted;
  for (auto k : order) {
    sorted.eigenvalues.push_back(out.eigenvalues[k]);
    sorted.eigenvectors.push_back(out.eigenvectors[k]);
    sorted.multiplicities.push_back(out.multiplicities[k]);
    sorted.residuals.push_back(out.residuals[k]);
  }
  sorted.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < sorted.eigenvalues.size(); ++a)
    for (std::size_t b = a + 1; b < sorted.eigenvalues.size(); ++b)
      sorted.min_gap = std::min(sorted.min_gap, tuple_dist(sorted.eigenvalues[a], sorted.eigenvalues[b]));
  if (sorted.eigenvalues.size() < 2) sorted.min_gap = 0.0;
  return sorted;
}

}  // namespace

JointSpectrum joint_diagonalize(const GaudinMatrices& mats, const DiagonalizeOptions& opts) {
  if (mats.G.empty() || mats.dim() == 0) fail(ErrorKind::PreconditionViolation, "empty Gaudin family");
  std::vector<Eigen::MatrixXcd> G;
  for (const auto& g : mats.G) G.push_back(to_eigen(g));
  double comm = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < G.size(); ++i) {
    scale = std::max(scale, G[i].norm());
    for (std::size_t j = i + 1; j < G.size(); ++j) comm = std::max(comm, (G[i] * G[j] - G[j] * G[i]).norm());
  }
  if (comm > std::max(opts.tol, 1e-10) * scale * scale)
    fail(ErrorKind::PreconditionViolation, "Gaudin matrices do not commute");

  std::mt19937_64 rng(opts.seed);
  JointSpectrum first = one_draw(G, rng, opts.tol);
  for (int k = 1; k < opts.draws; ++k) {
    const JointSpectrum other = one_draw(G, rng, opts.tol);
    double worst = 0.0;
    for (const auto& mu : other.eigenvalues) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& nu : first.eigenvalues) best = std::min(best, tuple_dist(mu, nu));
      worst = std::max(worst, best);
    }
    if (other.eigenvalues.size() != first.eigenvalues.size()) worst = std::numeric_limits<double>::infinity();
    first.cross_check = std::max(first.cross_check, worst);
  }
  return first;
}

}  // namespace operlab
