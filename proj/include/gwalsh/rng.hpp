#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gwalsh {

// Seeded generator with implementation-independent output.
//
// The engine is std::mt19937_64, whose sequence is fixed by the standard.
// The std:: distributions are not, so the conversions are done here:
//   uniform01: top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
//   normal:    Box-Muller, u1 = 1 - uniform01 in (0, 1], u2 = uniform01,
//              returns sqrt(-2 ln u1) * cos(2 pi u2); one draw pair per call.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gwalsh
