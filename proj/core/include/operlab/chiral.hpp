#pragma once

#include <vector>

#include "operlab/config.hpp"
#include "operlab/repspace.hpp"

namespace operlab {

// Residues at s = infinity are taken as +(coefficient of s^{-1}).
struct ChiralOptions {
  int extra_order = 4;     // truncation order is n + r + extra_order
  int max_order = 1 << 12; // doubling stops here
};

// r with lambda_{m+1} = r - 1; throws PreconditionViolation unless r is a non-negative integer.
int chiral_r(const RationalConfig& config);

// oint psi((t_0 - x)/(s - y_0), ..., (t_m - x)/(s - y_m)) prod (s - y_j)^{lambda_j} ds.
Polynomial<Rational> chiral_hecke(const Polynomial<Rational>& psi, const Rational& x, const RationalConfig& config,
                                  const ChiralOptions& opts = {});

// oint psi(1/(s - y_0), ..., 1/(s - y_m)) prod (s - y_j)^{lambda_j} ds.
Polynomial<Rational> chiral_restriction(const Polynomial<Rational>& psi, const RationalConfig& config,
                                        const ChiralOptions& opts = {});

// True if p is annihilated by sum_i d/dy_i.
bool translation_invariant(const Polynomial<Rational>& p, int nvars);

struct ChiralFactorization {
  Rational kappa;           // H_x = kappa R Q(x) on the sector
  bool exact = false;       // identity holds coefficient-wise at every sample
  std::size_t checked = 0;  // (basis element, x) pairs compared
};

// Compares H_x psi with kappa R(Q(x) psi) on the uncapped sector at the sample points.
ChiralFactorization chiral_factorization(const RationalConfig& config, const std::vector<Rational>& xs,
                                         const ChiralOptions& opts = {});

}  // namespace operlab
