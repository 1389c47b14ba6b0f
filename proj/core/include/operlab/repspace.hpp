#pragma once

#include <map>
#include <optional>
#include <vector>

#include "operlab/config.hpp"
#include "operlab/matrix.hpp"

namespace operlab {

using Monomial = std::vector<int>;

template <class T>
using Polynomial = std::map<Monomial, T>;

// Monomials in nvars variables of exactly the given degree, graded-lex order (y_0 powers descending).
std::vector<Monomial> monomials_of_degree(int nvars, int degree, const std::optional<std::vector<int>>& caps = {});
// All monomials of degree <= max_degree, by degree then lex.
std::vector<Monomial> monomials_up_to(int nvars, int max_degree);

// Translation-invariant homogeneous polynomials of degree n in y_0..y_m (optionally degree-capped).
struct WeightSector {
  int m = 0;
  int n = 0;
  std::optional<std::vector<int>> caps;
  std::vector<Monomial> ambient;             // degree-n monomials respecting caps
  std::map<Monomial, std::size_t> index;     // ambient index
  std::vector<std::vector<Rational>> basis;  // kernel basis in ambient coordinates
  std::vector<std::size_t> free_cols;        // basis[k] is 1 at free_cols[k] and 0 at the others

  std::size_t dim() const { return basis.size(); }

  // Coordinates of a sector element given by its ambient coefficients.
  template <class T>
  std::vector<T> coordinates(const Polynomial<T>& p) const {
    std::vector<T> out(dim(), T(0));
    for (std::size_t k = 0; k < dim(); ++k) {
      auto it = p.find(ambient[free_cols[k]]);
      if (it != p.end()) out[k] = it->second;
    }
    return out;
  }

  template <class T>
  Polynomial<T> polynomial(const std::vector<T>& coords) const {
    Polynomial<T> p;
    for (std::size_t k = 0; k < dim(); ++k)
      for (std::size_t a = 0; a < ambient.size(); ++a) {
        if (sgn(basis[k][a]) == 0) continue;
        p[ambient[a]] += coords[k] * from_rational<T>(basis[k][a]);
      }
    return p;
  }

  template <class T>
  Polynomial<T> basis_polynomial(std::size_t k) const {
    Polynomial<T> p;
    for (std::size_t a = 0; a < ambient.size(); ++a)
      if (sgn(basis[k][a]) != 0) p[ambient[a]] = from_rational<T>(basis[k][a]);
    return p;
  }
};

WeightSector build_sector(int m, int n, const std::optional<std::vector<int>>& caps = {});
// capped: caps deg_{y_i} <= lambda_i; requires dominant integral weights.
WeightSector build_sector(const GaudinConfig& config, bool capped);
WeightSector build_sector(const RationalConfig& config, bool capped);

// Binomial coefficient as exact integer (small arguments).
long binomial(long n, long k);

enum class Generator { E, H, F };

// Matrix of e_i = d_i, h_i = -2 y_i d_i + lambda, f_i = -y_i^2 d_i + lambda y_i on polynomials of
// degree <= max_degree in nvars variables (monomials_up_to order); f-images beyond max_degree are dropped.
template <class T>
DenseMatrix<T> generator_action(Generator gen, int factor, int nvars, int max_degree, const T& lambda);

// Apply e_i, h_i, f_i to a polynomial.
template <class T>
Polynomial<T> apply_generator(Generator gen, int factor, const T& lambda, const Polynomial<T>& p);

template <class T>
void add_into(Polynomial<T>& acc, const Polynomial<T>& p, const T& scale);

}  // namespace operlab
