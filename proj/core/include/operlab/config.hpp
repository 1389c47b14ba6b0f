#pragma once

#include <vector>

#include "operlab/scalar.hpp"

namespace operlab {

// Marked points t_0..t_m (t_{m+1} = infinity implicit), weights lambda_0..lambda_{m+1}, degree n.
template <class T>
struct BasicGaudinConfig {
  std::vector<T> t;
  std::vector<T> lambda;
  int n = 0;

  int m() const { return int(t.size()) - 1; }
  const T& lambda_inf() const { return lambda.back(); }
  T lambda_sum() const {
    T s(0);
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i) s += lambda[i];
    return s;
  }
};

using GaudinConfig = BasicGaudinConfig<cplx>;
using RationalConfig = BasicGaudinConfig<Rational>;

// Builds a configuration with lambda_{m+1} = sum(lambda) - 2n.
GaudinConfig make_config(const std::vector<cplx>& t, const std::vector<cplx>& lambda_finite, int n);
RationalConfig make_config(const std::vector<Rational>& t, const std::vector<Rational>& lambda_finite, int n);

// Throws InvalidConfig naming the violated invariant.
void validate(const GaudinConfig& c, double tol = 1e-9);
void validate(const RationalConfig& c);

GaudinConfig to_complex(const RationalConfig& c);

// True if lambda_0..lambda_m are non-negative integers (within tol).
bool dominant_integral(const GaudinConfig& c, double tol = 1e-12);
std::vector<int> integral_weights(const GaudinConfig& c);

}  // namespace operlab
