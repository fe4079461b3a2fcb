#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "gwalsh/matrix.hpp"
#include "gwalsh/signal_io.hpp"
#include "gwalsh/transform.hpp"

namespace fixtures {

using gwalsh::ComplexMatrix;
using gwalsh::WalshMatrix;

// Real triadic matrix used by both worked examples.
inline WalshMatrix triadic_a() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  ComplexMatrix m(3, 3);
  m << 1 / s3, 1 / s3, 1 / s3,
       s2 / 2, 0, -s2 / 2,
       -s6 / 6, s6 / 3, -s6 / 6;
  return WalshMatrix::validate(m, gwalsh::kGeneratedTol);
}

// Companion matrix as printed, ten digits per entry.
inline constexpr std::array<double, 6> kPrintedB = {
    -0.2226063221, -0.5690164837, 0.7916228058,
    -0.7855654600, 0.5855654600,  0.2};

inline ComplexMatrix printed_b_entries() {
  const double c = 1 / std::sqrt(3.0);
  ComplexMatrix m(3, 3);
  m << c, c, c,
       kPrintedB[0], kPrintedB[1], kPrintedB[2],
       kPrintedB[3], kPrintedB[4], kPrintedB[5];
  return m;
}

inline WalshMatrix printed_b() {
  return WalshMatrix::validate(printed_b_entries(), gwalsh::kExternalTol);
}

inline constexpr std::string_view kTriadicDigits = "000110000011111110002222222";

inline gwalsh::Signal triadic_f() { return gwalsh::signal_from_digits(kTriadicDigits, 3); }

// Dyadic step function on 16 cells.
inline constexpr std::string_view kDyadicDigits = "0101000011111111";

inline gwalsh::Signal dyadic_f() { return gwalsh::signal_from_digits(kDyadicDigits, 2); }

// Coefficients c_1..c_26 of triadic_f under triadic_a.
inline constexpr std::array<double, 26> kCoeffs = {
    -0.5443310539,  -0.05237828008, -0.1814436847, 0.2222222222,   0.1283000598,
    0.2618914004,   0.,             -0.07407407407, -0.04536092117, 0.1666666667,
    0.03207501497,  -0.2222222222,  0.1360827635,  -0.07856742012, 0.1283000598,
    0.,             -0.09072184234, 0.02618914004, 0.09622504490,  0.09259259259,
    -0.06415002993, 0.07856742012,  0.04536092117, 0.03703703704,  0.,
    -0.1047565601};

// 26 published values of W_A W_B^-1 W_A f; the index offset is not stated.
inline constexpr std::array<double, 26> kThirdMessage = {
    0.4268793977,   0.3417802807,   -0.05238646443, 0.1424437841,  0.08209867227,
    0.3142683164,   0.2103987320,   0.005704364048, 0.01428020223, 0.1948148148,
    0.06725825079,  -0.06424603320, 0.001060076263, -0.1578695927, -0.2267207154,
    -0.1331355569,  -0.01534027859, 0.05039404776,  0.003108220861, 0.06444444442,
    -0.03427062570, 0.01804658637,  -0.05818088527, -0.1209391520, 0.02910416584,
    -0.06844063412};

// Sweep of dyadic_f under triadic_a on the q = 6 grid. Self-generated; an
// independent dense-matrix computation agrees to 1e-15.
struct SweepFixture {
  std::uint64_t k;
  double sup, l1, l2;
};
inline constexpr std::array<SweepFixture, 6> kSweep = {{
    {36, 1.072916666666667, 0.08418531378600841, 0.1692033044312453},
    {60, 0.8576388888888892, 0.04332508144718814, 0.11156230727871216},
    {100, 0.9089506172839504, 0.03129207310877417, 0.09153415967739793},
    {200, 0.8281249999999997, 0.016091401248857034, 0.06914237931335948},
    {241, 0.8163580246913577, 0.012726718488035306, 0.06659089200738091},
    {300, 0.7256944444444441, 0.01628103619451663, 0.06199813535392043},
}};
inline constexpr int kSweepQ = 6;

inline double max_abs_diff(const std::vector<gwalsh::Complex>& x,
                           const std::vector<gwalsh::Complex>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

}  // namespace fixtures
