#include "operlab/chiral.hpp"

#include <optional>

#include "operlab/errors.hpp"
#include "operlab/gaudin.hpp"
#include "operlab/oper.hpp"

namespace operlab {

namespace {

// Truncated series in 1/s with polynomial coefficients: terms[l] multiplies s^{-l}.
using Series = std::vector<Polynomial<Rational>>;

Rational generalized_binomial(const Rational& a, int l) {
  Rational r = 1;
  for (int i = 0; i < l; ++i) r = r * (a - i) / (i + 1);
  return r;
}

// (1 - y_j/s)^a truncated at order N.
Series binomial_series(int nvars, int j, const Rational& a, int N) {
  Series s(std::size_t(N + 1));
  Rational sign = 1;
  for (int l = 0; l <= N; ++l) {
    const Rational c = generalized_binomial(a, l) * sign;
    sign = -sign;
    if (sgn(c) == 0) continue;
    Monomial mono(std::size_t(nvars), 0);
    mono[std::size_t(j)] = l;
    s[std::size_t(l)][mono] = c;
  }
  return s;
}

Series multiply(const Series& a, const Series& b, int N) {
  Series out(std::size_t(N + 1));
  for (int i = 0; i <= N; ++i)
    for (int k = 0; i + k <= N; ++k)
      for (const auto& [ma, ca] : a[std::size_t(i)])
        for (const auto& [mb, cb] : b[std::size_t(k)]) {
          Monomial mm(ma.size());
          for (std::size_t v = 0; v < ma.size(); ++v) mm[v] = ma[v] + mb[v];
          out[std::size_t(i + k)][mm] += ca * cb;
        }
  return out;
}

void prune(Polynomial<Rational>& p) {
  for (auto it = p.begin(); it != p.end();)
    it = sgn(it->second) == 0 ? p.erase(it) : std::next(it);
}

void check_config(const RationalConfig& config) {
  validate(config);
  chiral_r(config);
}

// Residue of prod (s - y_j)^{lambda_j - k_j} for one monomial y^k.
Polynomial<Rational> monomial_residue(const Monomial& k, const RationalConfig& config, int base_order,
                                      const ChiralOptions& opts) {
  const int nv = int(config.t.size());
  Rational total = 0;
  std::vector<Rational> alpha(static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    alpha[std::size_t(j)] = config.lambda[std::size_t(j)] - k[std::size_t(j)];
    total += alpha[std::size_t(j)];
  }
  total.canonicalize();
  if (total.get_den() != 1)
    fail(ErrorKind::PreconditionViolation, "integrand is not single-valued at infinity");
  // s^{total} * series; the s^{-1} coefficient sits at order total + 1.
  const long need = total.get_num().get_si() + 1;
  if (need < 0) return {};
  int N = base_order;
  while (true) {
    try {
      if (need > N) fail(ErrorKind::TruncationInsufficient, "residue lies beyond the truncation order");
      Series acc(std::size_t(N + 1));
      acc[0][Monomial(std::size_t(nv), 0)] = 1;
      for (int j = 0; j < nv; ++j) acc = multiply(acc, binomial_series(nv, j, alpha[std::size_t(j)], N), N);
      auto out = acc[std::size_t(need)];
      prune(out);
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TruncationInsufficient || N >= opts.max_order) throw;
      N *= 2;
    }
  }
}

Polynomial<Rational> residue_transform(const Polynomial<Rational>& psi, const RationalConfig& config,
                                       const std::optional<Rational>& x, const ChiralOptions& opts) {
  check_config(config);
  const int r = chiral_r(config);
  const int base = config.n + r + opts.extra_order;
  Polynomial<Rational> out;
  for (const auto& [k, c] : psi) {
    if (sgn(c) == 0) continue;
    Rational factor = c;
    if (x)
      for (std::size_t i = 0; i < k.size(); ++i)
        for (int p = 0; p < k[i]; ++p) factor *= config.t[i] - *x;
    if (sgn(factor) == 0) continue;
    for (const auto& [mono, v] : monomial_residue(k, config, base, opts)) out[mono] += factor * v;
  }
  prune(out);
  return out;
}

}  // namespace

int chiral_r(const RationalConfig& config) {
  Rational r = config.lambda_inf() + 1;
  r.canonicalize();
  if (r.get_den() != 1 || sgn(r) < 0)
    fail(ErrorKind::PreconditionViolation, "chiral operators need lambda_{m+1} = r - 1 with r a non-negative integer");
  return int(r.get_num().get_si());
}

Polynomial<Rational> chiral_hecke(const Polynomial<Rational>& psi, const Rational& x, const RationalConfig& config,
                                  const ChiralOptions& opts) {
  return residue_transform(psi, config, x, opts);
}

Polynomial<Rational> chiral_restriction(const Polynomial<Rational>& psi, const RationalConfig& config,
                                        const ChiralOptions& opts) {
  return residue_transform(psi, config, std::nullopt, opts);
}

bool translation_invariant(const Polynomial<Rational>& p, int nvars) {
  Polynomial<Rational> d;
  for (int i = 0; i < nvars; ++i)
    add_into(d, apply_generator(Generator::E, i, Rational(0), p), Rational(1));
  prune(d);
  return d.empty();
}

ChiralFactorization chiral_factorization(const RationalConfig& config, const std::vector<Rational>& xs,
                                         const ChiralOptions& opts) {
  check_config(config);
  const WeightSector sector = build_sector(config, false);
  const auto Q = baxter_q(gaudin_matrices(config, sector));
  const std::size_t dim = sector.dim();

  std::vector<Polynomial<Rational>> R;
  for (std::size_t l = 0; l < dim; ++l) R.push_back(chiral_restriction(sector.basis_polynomial<Rational>(l), config, opts));

  ChiralFactorization out;
  std::optional<Rational> kappa;
  bool ok = true;
  for (const auto& x : xs) {
    const auto Qx = Q(x);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto lhs = chiral_hecke(sector.basis_polynomial<Rational>(k), x, config, opts);
      Polynomial<Rational> rhs;
      for (std::size_t l = 0; l < dim; ++l)
        if (sgn(Qx(l, k)) != 0) add_into(rhs, R[l], Qx(l, k));
      prune(rhs);
      ++out.checked;
      if (lhs.empty() && rhs.empty()) continue;
      if (lhs.empty() != rhs.empty()) {
        ok = false;
        continue;
      }
      if (!kappa) kappa = Rational(lhs.begin()->second / rhs.begin()->second);
      Polynomial<Rational> diff = lhs;
      add_into(diff, rhs, Rational(-*kappa));
      prune(diff);
      ok = ok && diff.empty();
    }
  }
  out.kappa = kappa.value_or(Rational(0));
  out.exact = ok && kappa.has_value();
  return out;
}

}  // namespace operlab
