#include "operlab/errors.hpp"

#include <sstream>

namespace operlab {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorKind::Incomplete: return "Incomplete";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::ResonanceError: return "ResonanceError";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::StencilTooCoarse: return "StencilTooCoarse";
    case ErrorKind::SingularityTooClose: return "SingularityTooClose";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::SeriesDivergence: return "SeriesDivergence";
    case ErrorKind::PathThroughSingularity: return "PathThroughSingularity";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

static std::string pole_message(std::complex<double> z, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (pole at " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  return os.str();
}

PoleError::PoleError(std::complex<double> location, const std::string& what)
    : Error(ErrorKind::PoleError, pole_message(location, what)), location_(location) {}

static std::string constraint_message(double a, double b) {
  std::ostringstream os;
  os.precision(6);
  os << "residue constraints violated: |sum mu| = " << a << ", |sum t mu - rhs| = " << b;
  return os.str();
}

ConstraintViolation::ConstraintViolation(double sum_residual, double moment_residual)
    : Error(ErrorKind::ConstraintViolation, constraint_message(sum_residual, moment_residual)),
      sum_(sum_residual),
      moment_(moment_residual) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace operlab
