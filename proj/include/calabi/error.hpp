#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace calabi {

enum class ErrorCode {
  TooFewEdges,
  NonPrimitiveNormal,
  NonIncreasingAbscissas,
  ParallelUnboundedEdges,
  NonConvexOrdering,
  NotAdmissible,
  SingularPoint,
  NonPositiveV,
  QuadratureFailure,
  NonFiniteSample,
  NoConvergence,
  InvalidInput,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewEdges: return "TooFewEdges";
    case ErrorCode::NonPrimitiveNormal: return "NonPrimitiveNormal";
    case ErrorCode::NonIncreasingAbscissas: return "NonIncreasingAbscissas";
    case ErrorCode::ParallelUnboundedEdges: return "ParallelUnboundedEdges";
    case ErrorCode::NonConvexOrdering: return "NonConvexOrdering";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NonPositiveV: return "NonPositiveV";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the named codes above;
// what() is "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace calabi
