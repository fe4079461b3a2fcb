#pragma once

#include <string>
#include <string_view>

#include "gwalsh/transform.hpp"

namespace gwalsh {

// CSV files, one cell value (or coefficient) per line:
//
//   # gwalsh signal N=3 q=2      (or "# gwalsh coeffs N=3 q=2")
//   0.5
//   -0.25,0.125                  (re,im when any value is complex)
//
// Values are printed with `precision` significant digits; 12 is the
// default used for every file the CLI writes.

inline constexpr int kCsvPrecision = 12;
/// Enough digits for a lossless round trip through text.
inline constexpr int kExactPrecision = 17;

std::string signal_to_csv(const Signal& s, int precision = kCsvPrecision);
std::string coeffs_to_csv(const CoefficientVector& c, int precision = kCsvPrecision);

Signal signal_from_csv(std::string_view text);
CoefficientVector coeffs_from_csv(std::string_view text);

/// A signal given as a string of digits, one cell per character ('7' -> 7.0).
/// The length must be base^q for some q.
Signal signal_from_digits(std::string_view cells, int base);

/// printf("%.*g") of one value.
std::string format_number(double v, int precision = kCsvPrecision);

}  // namespace gwalsh
