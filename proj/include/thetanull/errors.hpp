#pragma once
//
// Error taxonomy for the library.  Two coarse classes matter at the process
// boundary: problems with the *input* (malformed documents, matrices outside
// the Siegel upper-half space, out-of-range genus) and *numerical* failures
// (series that would need more terms than the configured caps allow, singular
// linear systems, probe points that cannot be brought back onto the theta
// divisor).  The CLI maps the first class to exit code 2 and the second to 3.
//
#include <stdexcept>
#include <string>

namespace thetanull {

enum class ErrorKind {
  // input errors (exit code 2)
  Parse,
  DimensionMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  NotSymplectic,
  GenusTooLarge,
  WrongGenus,
  Config,
  // numerical failures (exit code 3)
  NonConvergent,
  SingularDenominator,
  AllConstantsTiny,
  NotOnDivisor,
  BasePoint,
  StepTooLarge,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  bool is_input_error() const {
    switch (kind_) {
      case ErrorKind::Parse:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::NotSymmetric:
      case ErrorKind::NotPositiveDefinite:
      case ErrorKind::NotSymplectic:
      case ErrorKind::GenusTooLarge:
      case ErrorKind::WrongGenus:
      case ErrorKind::Config:
        return true;
      default:
        return false;
    }
  }

  int exit_code() const { return is_input_error() ? 2 : 3; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::GenusTooLarge: return "GenusTooLarge";
    case ErrorKind::WrongGenus: return "WrongGenus";
    case ErrorKind::Config: return "Config";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::AllConstantsTiny: return "AllConstantsTiny";
    case ErrorKind::NotOnDivisor: return "NotOnDivisor";
    case ErrorKind::BasePoint: return "BasePoint";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
  }
  return "Unknown";
}

}  // namespace thetanull
