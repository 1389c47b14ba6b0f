#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace operlab {

enum class ErrorKind {
  PoleError,
  NonConvergence,
  InvalidConfig,
  PreconditionViolation,
  NonDiagonalizable,
  Incomplete,
  ZeroVector,
  ConstraintViolation,
  ResonanceError,
  InconsistentSystem,
  StencilTooCoarse,
  SingularityTooClose,
  StepFailure,
  SeriesDivergence,
  PathThroughSingularity,
  TruncationInsufficient,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PoleError : public Error {
 public:
  PoleError(std::complex<double> location, const std::string& what);
  std::complex<double> location() const noexcept { return location_; }

 private:
  std::complex<double> location_;
};

class ConstraintViolation : public Error {
 public:
  ConstraintViolation(double sum_residual, double moment_residual);
  double sum_residual() const noexcept { return sum_; }
  double moment_residual() const noexcept { return moment_; }

 private:
  double sum_, moment_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace operlab
