#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace convexsmooth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  InvalidArgument,
  InvalidBody,
  DegenerateBall,
  InsufficientData,
  NotBallBody,
  DomainViolation,
  NonConvergence,
  OutsideDomain,
  RayMiss,
  BracketFailure,
  GridMismatch,
  DegenerateEpsilon,
  ShrinkDelta,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::DegenerateBall: return "DegenerateBall";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NotBallBody: return "NotBallBody";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::RayMiss: return "RayMiss";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegenerateEpsilon: return "DegenerateEpsilon";
    case ErrorCode::ShrinkDelta: return "ShrinkDelta";
  }
  return "Unknown";
}

}  // namespace convexsmooth
