#include "operlab/repspace.hpp"

#include <cmath>
#include <sstream>

#include "operlab/errors.hpp"

namespace operlab {

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::InvalidConfig, "not a rational number: " + s);
  q.canonicalize();
  return q;
}

GaudinConfig make_config(const std::vector<cplx>& t, const std::vector<cplx>& lambda_finite, int n) {
  GaudinConfig c;
  c.t = t;
  c.lambda = lambda_finite;
  c.n = n;
  cplx s = 0.0;
  for (auto l : lambda_finite) s += l;
  c.lambda.push_back(s - 2.0 * double(n));
  return c;
}

RationalConfig make_config(const std::vector<Rational>& t, const std::vector<Rational>& lambda_finite, int n) {
  RationalConfig c;
  c.t = t;
  c.lambda = lambda_finite;
  c.n = n;
  Rational s = 0;
  for (const auto& l : lambda_finite) s += l;
  c.lambda.push_back(s - 2 * n);
  return c;
}

namespace {
template <class C, class Dist, class Check>
void validate_common(const C& c, Dist dist, Check two_n) {
  if (c.t.empty()) fail(ErrorKind::InvalidConfig, "at least one finite marked point is required");
  if (c.lambda.size() != c.t.size() + 1)
    fail(ErrorKind::InvalidConfig, "weights must list lambda_0..lambda_{m+1} (m+2 entries)");
  if (c.n < 0) fail(ErrorKind::InvalidConfig, "n must be non-negative");
  for (std::size_t i = 0; i < c.t.size(); ++i)
    for (std::size_t j = i + 1; j < c.t.size(); ++j)
      if (dist(c.t[i], c.t[j])) {
        std::ostringstream os;
        os << "marked points must be pairwise distinct (t_" << i << " = t_" << j << ")";
        fail(ErrorKind::InvalidConfig, os.str());
      }
  if (!two_n()) fail(ErrorKind::InvalidConfig, "weights violate sum(lambda_i) - lambda_{m+1} = 2n");
}
}  // namespace

void validate(const GaudinConfig& c, double tol) {
  validate_common(
      c, [tol](cplx a, cplx b) { return std::abs(a - b) <= tol; },
      [&] { return c.lambda.size() == c.t.size() + 1 && std::abs(c.lambda_sum() - c.lambda_inf() - 2.0 * double(c.n)) <= tol; });
}

void validate(const RationalConfig& c) {
  validate_common(
      c, [](const Rational& a, const Rational& b) { return a == b; },
      [&] { return c.lambda.size() == c.t.size() + 1 && c.lambda_sum() - c.lambda_inf() == 2 * c.n; });
}

GaudinConfig to_complex(const RationalConfig& c) {
  GaudinConfig out;
  out.t = to_cplx_vec(c.t);
  out.lambda = to_cplx_vec(c.lambda);
  out.n = c.n;
  return out;
}

bool dominant_integral(const GaudinConfig& c, double tol) {
  for (std::size_t i = 0; i + 1 < c.lambda.size(); ++i) {
    const cplx l = c.lambda[i];
    if (std::abs(l.imag()) > tol || l.real() < -tol || std::abs(l.real() - std::round(l.real())) > tol) return false;
  }
  return true;
}

std::vector<int> integral_weights(const GaudinConfig& c) {
  std::vector<int> w;
  for (std::size_t i = 0; i + 1 < c.lambda.size(); ++i) w.push_back(int(std::lround(c.lambda[i].real())));
  return w;
}

long binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {
void gen_monomials(int var, int nvars, int remaining, const std::optional<std::vector<int>>& caps, Monomial& cur,
                   std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    if (caps && remaining > (*caps)[var]) return;
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  int top = remaining;
  if (caps) top = std::min(top, (*caps)[var]);
  for (int k = top; k >= 0; --k) {
    cur[var] = k;
    gen_monomials(var + 1, nvars, remaining - k, caps, cur, out);
  }
  cur[var] = 0;
}
}  // namespace

std::vector<Monomial> monomials_of_degree(int nvars, int degree, const std::optional<std::vector<int>>& caps) {
  std::vector<Monomial> out;
  if (nvars <= 0 || degree < 0) return out;
  Monomial cur(nvars, 0);
  gen_monomials(0, nvars, degree, caps, cur, out);
  return out;
}

std::vector<Monomial> monomials_up_to(int nvars, int max_degree) {
  std::vector<Monomial> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto part = monomials_of_degree(nvars, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

WeightSector build_sector(int m, int n, const std::optional<std::vector<int>>& caps) {
  if (n < 0) fail(ErrorKind::InvalidConfig, "n must be non-negative");
  if (caps && int(caps->size()) != m + 1) fail(ErrorKind::InvalidConfig, "one degree cap per finite point required");
  WeightSector s;
  s.m = m;
  s.n = n;
  s.caps = caps;
  s.ambient = monomials_of_degree(m + 1, n, caps);
  for (std::size_t a = 0; a < s.ambient.size(); ++a) s.index[s.ambient[a]] = a;
  // Sum of d_i maps degree n to degree n-1.
  const auto target = monomials_of_degree(m + 1, n - 1);
  std::map<Monomial, std::size_t> tindex;
  for (std::size_t b = 0; b < target.size(); ++b) tindex[target[b]] = b;
  DenseMatrix<Rational> D(target.size(), s.ambient.size());
  for (std::size_t a = 0; a < s.ambient.size(); ++a) {
    for (int i = 0; i <= m; ++i) {
      const int k = s.ambient[a][i];
      if (k == 0) continue;
      Monomial mm = s.ambient[a];
      mm[i] -= 1;
      D(tindex.at(mm), a) += k;
    }
  }
  const auto pivots = rref(D);
  std::vector<bool> is_pivot(s.ambient.size(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < s.ambient.size(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(s.ambient.size(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -D(r, f);
    s.basis.push_back(std::move(v));
    s.free_cols.push_back(f);
  }
  return s;
}

WeightSector build_sector(const GaudinConfig& config, bool capped) {
  validate(config);
  if (!capped) return build_sector(config.m(), config.n);
  if (!dominant_integral(config))
    fail(ErrorKind::InvalidConfig, "degree caps require non-negative integer weights lambda_0..lambda_m");
  return build_sector(config.m(), config.n, integral_weights(config));
}

WeightSector build_sector(const RationalConfig& config, bool capped) {
  validate(config);
  return build_sector(to_complex(config), capped);
}

template <class T>
void add_into(Polynomial<T>& acc, const Polynomial<T>& p, const T& scale) {
  for (const auto& [mono, c] : p) {
    T v = c * scale;
    auto it = acc.find(mono);
    if (it == acc.end()) {
      acc.emplace(mono, v);
    } else {
      it->second += v;
    }
  }
}

template <class T>
Polynomial<T> apply_generator(Generator gen, int i, const T& lambda, const Polynomial<T>& p) {
  Polynomial<T> out;
  for (const auto& [mono, c] : p) {
    const int k = mono[i];
    switch (gen) {
      case Generator::E:
        if (k > 0) {
          Monomial mm = mono;
          mm[i] -= 1;
          out[mm] += c * from_int<T>(k);
        }
        break;
      case Generator::H:
        out[mono] += c * (lambda - from_int<T>(2 * k));
        break;
      case Generator::F: {
        Monomial mm = mono;
        mm[i] += 1;
        out[mm] += c * (lambda - from_int<T>(k));
        break;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) it = (it->second == T(0)) ? out.erase(it) : std::next(it);
  return out;
}

template <class T>
DenseMatrix<T> generator_action(Generator gen, int factor, int nvars, int max_degree, const T& lambda) {
  const auto monos = monomials_up_to(nvars, max_degree);
  std::map<Monomial, std::size_t> idx;
  for (std::size_t a = 0; a < monos.size(); ++a) idx[monos[a]] = a;
  DenseMatrix<T> M(monos.size(), monos.size());
  for (std::size_t a = 0; a < monos.size(); ++a) {
    Polynomial<T> p{{monos[a], T(1)}};
    for (const auto& [mono, c] : apply_generator(gen, factor, lambda, p)) {
      auto it = idx.find(mono);
      if (it != idx.end()) M(it->second, a) = c;
    }
  }
  return M;
}

template void add_into<Rational>(Polynomial<Rational>&, const Polynomial<Rational>&, const Rational&);
template void add_into<cplx>(Polynomial<cplx>&, const Polynomial<cplx>&, const cplx&);
template Polynomial<Rational> apply_generator<Rational>(Generator, int, const Rational&, const Polynomial<Rational>&);
template Polynomial<cplx> apply_generator<cplx>(Generator, int, const cplx&, const Polynomial<cplx>&);
template DenseMatrix<Rational> generator_action<Rational>(Generator, int, int, int, const Rational&);
template DenseMatrix<cplx> generator_action<cplx>(Generator, int, int, int, const cplx&);

}  // namespace operlab
