#include "operlab/localfield.hpp"

#include <cmath>
#include <numbers>

#include "operlab/errors.hpp"

namespace operlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(cplx a, bool even_only) {
  const double r = std::round(a.real());
  if (r > 0.5) return false;
  if (std::abs(a - cplx(r, 0.0)) > 1e-12 * std::max(1.0, std::abs(r))) return false;
  if (!even_only) return true;
  return std::fmod(std::abs(r), 2.0) < 0.5;
}

// Lanczos form, valid for Re z >= 1/2.
cplx lgamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

double field_norm(cplx z, FieldTag field) {
  const double a = std::abs(z);
  return field == FieldTag::Real ? a : a * a;
}

cplx lgamma_c(cplx z) {
  if (z.real() >= 0.5) return lgamma_right(z);
  if (near_nonpositive_integer(z, false)) throw PoleError(z, "Gamma");
  return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_right(1.0 - z);
}

cplx gamma_c(cplx z) {
  if (z.real() >= 0.5) return std::exp(lgamma_right(z));
  if (near_nonpositive_integer(z, false)) throw PoleError(z, "Gamma");
  return kPi / (std::sin(kPi * z) * std::exp(lgamma_right(1.0 - z)));
}

cplx gamma_local(cplx a, FieldTag field) {
  if (field == FieldTag::Real) {
    if (a.real() >= 0.5)
      return 2.0 * std::exp(-a * std::log(2.0 * kPi) + lgamma_right(a)) * std::cos(0.5 * kPi * a);
    if (near_nonpositive_integer(a, true)) throw PoleError(a, "real Tate gamma factor");
    return 1.0 / gamma_local(1.0 - a, field);
  }
  if (a.real() >= 0.5)
    return std::exp((1.0 - 2.0 * a) * std::log(2.0 * kPi) + 2.0 * lgamma_right(a)) * std::sin(kPi * a) / kPi;
  if (near_nonpositive_integer(a, false)) throw PoleError(a, "complex Tate gamma factor");
  return 1.0 / gamma_local(1.0 - a, field);
}

cplx gamma_cos(cplx c) {
  return 0.5 * gamma_local(c, FieldTag::Real) * std::exp(c * std::log(2.0 * kPi));
}

cplx beta_closed(cplx alpha, cplx beta, FieldTag field) {
  // 1/Gamma(alpha+beta) = Gamma(1-alpha-beta) makes the (alpha, 1-alpha-beta) symmetry exact.
  return gamma_local(alpha, field) * gamma_local(beta, field) * gamma_local(1.0 - alpha - beta, field);
}

}  // namespace operlab
