#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace operlab {

using cplx = std::complex<double>;
using Rational = mpq_class;

inline cplx to_cplx(const cplx& x) { return x; }
inline cplx to_cplx(double x) { return {x, 0.0}; }
inline cplx to_cplx(const Rational& q) { return {q.get_d(), 0.0}; }

template <class T>
T from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline cplx from_rational<cplx>(const Rational& q) { return {q.get_d(), 0.0}; }
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }

template <class T>
T from_int(long v) { return T(v); }
template <>
inline Rational from_int<Rational>(long v) { return Rational(v); }

inline double magnitude(const cplx& x) { return std::abs(x); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Rational& q) { return std::abs(q.get_d()); }

inline bool is_zero(const Rational& q, double = 0.0) { return sgn(q) == 0; }
inline bool is_zero(const cplx& x, double tol) { return std::abs(x) <= tol; }

Rational parse_rational(const std::string& s);

template <class T>
std::vector<cplx> to_cplx_vec(const std::vector<T>& v) {
  std::vector<cplx> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_cplx(x));
  return out;
}

}  // namespace operlab
