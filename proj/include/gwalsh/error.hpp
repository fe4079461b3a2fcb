#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwalsh {

enum class ErrorCode {
  // matrix_core
  BadDimension,
  BadFirstRow,
  NotUnitary,
  OutOfRange,
  DegenerateDraw,
  DimensionMismatch,
  // walsh_basis
  Overflow,
  OutOfDomain,
  BadRow,
  // transform / series
  BaseMismatch,
  BadLength,
  ResolutionTooCoarse,
  IncompatibleGrids,
  ZeroSignal,
  // protocol
  NoRealSolution,
  DegenerateElimination,
  NoConvergence,
  // I/O and arguments
  ParseError,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for failures of a numeric procedure on otherwise well-formed input.
/// The CLI maps these to exit status 1 and everything else to 2.
bool is_numeric_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gwalsh
