#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwalsh/matrix.hpp"

namespace gwalsh {

/// max |G - I| for the Gram matrix G_mn = <W_m, W_n>, m, n < N^q.
double gram_defect(const WalshMatrix& a, int q);

struct KernelCheckReport {
  std::size_t pairs = 0;
  std::size_t same_cell_pairs = 0;
  double max_deviation = 0.0;  // vs N^q [t in the q-cell of x]
};

/// Brute-force Dirichlet kernel at seeded random (x, t). Every other pair
/// draws t inside the q-cell of x so both branches of the closed form occur.
KernelCheckReport kernel_check(const WalshMatrix& a, int q, std::size_t pairs,
                               std::uint64_t seed);

struct CheckResult {
  std::string name;
  double value = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  std::string to_json() const;
};

/// Unitarity, Gram, kernel and martingale checks of A at resolution q (the
/// martingale checks on a seeded random signal of resolution q + 1), plus
/// the pairing checks when B is given. Each passes iff its value <= tol.
VerifyReport verify_matrices(const WalshMatrix& a, const std::optional<WalshMatrix>& b, int q,
                             double tol, std::uint64_t seed = 0);

}  // namespace gwalsh
