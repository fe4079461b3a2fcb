#include "gwalsh/error.hpp"

namespace gwalsh {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadFirstRow: return "BadFirstRow";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BadRow: return "BadRow";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::IncompatibleGrids: return "IncompatibleGrids";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::DegenerateElimination: return "DegenerateElimination";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotUnitary:
    case ErrorCode::OutOfRange:
    case ErrorCode::DegenerateDraw:
    case ErrorCode::NoRealSolution:
    case ErrorCode::DegenerateElimination:
    case ErrorCode::NoConvergence:
    case ErrorCode::ZeroSignal:
      return true;
    default:
      return false;
  }
}

}  // namespace gwalsh
