#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwalsh/matrix.hpp"
#include "gwalsh/transform.hpp"

namespace gwalsh {

// ---------------------------------------------------------------------------
// Pairing conditions
//
// Two Walsh matrices A, B of the same size pair when
//   <row_l(B), row_k(A)> = <row_l(A), row_k(B)>   for all rows l, k >= 1
// which is equivalent to the basis-level identity
//   <W_{l,B}, W_{k,A}> = <W_{l,A}, W_{k,B}>        for all l, k
// and makes W_B^-1 W_A W_B^-1 W_A the identity on step functions.
// Rows are 0-based; pairs involving row 0 hold automatically.
// ---------------------------------------------------------------------------

struct ComaReport {
  bool holds = false;
  RowPair worst_pair;
  double worst_residual = 0.0;
};

/// max over 1 <= l <= k <= N-1 of |row_inner(B,A,l,k) - row_inner(A,B,l,k)|.
/// The diagonal l = k is identically zero for real matrices; for complex
/// ones it requires <row_l(B), row_l(A)> to be real.
ComaReport coma_check(const WalshMatrix& a, const WalshMatrix& b, double tol);

struct CommReport {
  bool holds = false;
  std::uint64_t worst_l = 0;
  std::uint64_t worst_k = 0;
  double worst_residual = 0.0;
  double degree_one_residual = 0.0;  // max over l, k < N
};

/// Brute-force L2 inner products of every pair of Walsh functions with
/// indices below N^q, from their grid values.
CommReport comm_check(const WalshMatrix& a, const WalshMatrix& b, int q, double tol);

// ---------------------------------------------------------------------------
// Companion matrices for N = 3
// ---------------------------------------------------------------------------

/// Real 3x3 B pairing with A and with B(2,2) = r.
///
/// Rows 1, 2 of B are an orthonormal pair in the plane orthogonal to the
/// constant row, written in the basis of A's rows u1, u2. Rotations pair
/// with A only for B = A and B = diag(1,-1,-1) A; the reflections
///   row1 = c u1 + s u2,  row2 = s u1 - c u2,   c^2 + s^2 = 1
/// all pair. Eliminating (c, s) through Z = B(1,1) and r = B(2,2) leaves
///   alpha Z^2 + beta Z + gamma = 0
/// (6Z^2 + 6 sqrt(3) r Z + 6r^2 - 1 = 0 up to scale for the first example
/// matrix). `branch` picks the root; c and s follow by back-substitution.
/// Real roots exist iff |r| <= sqrt(A(1,2)^2 + A(2,2)^2), which is sqrt(2/3)
/// for every real 3x3 Walsh matrix.
WalshMatrix solve_b_n3(const WalshMatrix& a, double r, Branch branch);

/// The one-parameter family solve_b_n3(base, r, branch), |r| <= r_max.
struct CompanionFamily {
  WalshMatrix base;
  Branch branch = Branch::Plus;
  double r_max = 0.0;

  static constexpr std::string_view free_param_name = "r";

  bool admissible(double r) const { return r >= -r_max && r <= r_max; }
  WalshMatrix member(double r) const { return solve_b_n3(base, r, branch); }
};

CompanionFamily companion_family(const WalshMatrix& a, Branch branch);

// ---------------------------------------------------------------------------
// Published constraint system
// ---------------------------------------------------------------------------

/// coeffs . x = rhs over the unknown vector x of rows 1..N-1 of B,
/// x[(i-1)N + j] = Re b_ij and, for complex systems, x[N(N-1) + (i-1)N + j] =
/// Im b_ij. Unknown names are "b_i_j" and "b_i_j_im" (0-based indices).
struct LinearEquation {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

struct MaskedConstraintSystem {
  int n = 0;
  bool complex_unknowns = false;
  std::uint64_t mask_seed = 0;
  std::vector<LinearEquation> equations;

  std::size_t unknown_count() const {
    const auto per = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
    return complex_unknowns ? 2 * per : per;
  }
};

/// Unscaled pairing equations for rows 1 <= l < k <= N-1:
///   sum_j a_kj b_lj - sum_j a_lj b_kj = 0.
/// Complex A (or complex_unknowns) gives the real and imaginary parts of
/// <row_l(B), row_k(A)> - <row_l(A), row_k(B)> for l < k and the
/// imaginary part for l = k.
MaskedConstraintSystem pairing_constraints(const WalshMatrix& a, bool complex_unknowns = false);

/// pairing_constraints with every equation multiplied by a seeded random
/// factor from [0.5, 2] with random sign.
MaskedConstraintSystem mask_constraints(const WalshMatrix& a, std::uint64_t mask_seed,
                                        bool complex_unknowns = false);

std::string unknown_name(int n, std::size_t index);

/// [{"coeffs": {"b_1_0": ..., ...}, "rhs": 0}, ...]; zero coefficients omitted.
std::string masked_to_json(const MaskedConstraintSystem& m);
/// n defaults to one more than the largest row or column index named.
MaskedConstraintSystem masked_from_json(const std::string& text, std::optional<int> n = std::nullopt);

struct NumericSolveOptions {
  bool exclude_trivial = true;
  double min_distance = 0.1;  // max-entry distance from A when excluding B = A
  int max_restarts = 50;
  int max_iterations = 200;
};

/// Levenberg-Marquardt on unit rows, zero row sums, row orthogonality and the
/// masked equations, restarted from seeded random Walsh matrices. Returns the
/// first solution with max residual <= tol that validates and pairs with A;
/// NoConvergence (with the best residual seen) otherwise.
WalshMatrix solve_b_numeric(const WalshMatrix& a, const MaskedConstraintSystem& masked,
                            std::uint64_t seed, double tol,
                            const NumericSolveOptions& options = {});

/// max |equation residual| of B's entries in the system.
double constraint_residual(const MaskedConstraintSystem& m, const WalshMatrix& b);

// ---------------------------------------------------------------------------
// Four-message exchange
// ---------------------------------------------------------------------------

/// Transport for the exchange messages. Every message crosses as text.
class MessageChannel {
 public:
  virtual ~MessageChannel() = default;
  virtual void send(const std::string& name, const std::string& payload) = 0;
  virtual std::string receive(const std::string& name) = 0;
};

class MemoryChannel final : public MessageChannel {
 public:
  void send(const std::string& name, const std::string& payload) override;
  std::string receive(const std::string& name) override;

 private:
  std::map<std::string, std::string> messages_;
};

/// One file per message, <dir>/<name>.csv.
class DirectoryChannel final : public MessageChannel {
 public:
  explicit DirectoryChannel(std::filesystem::path dir);
  void send(const std::string& name, const std::string& payload) override;
  std::string receive(const std::string& name) override;

 private:
  std::filesystem::path dir_;
};

struct ExchangeTranscript {
  CoefficientVector w1;  // Alice -> Bob: W_A f
  Signal w2;             // Bob -> Alice: W_B^-1 w1
  CoefficientVector w3;  // Alice -> Bob: W_A w2
  Signal recovered;      // Bob: W_B^-1 w3
  double max_error = 0.0;
  bool pairing_violated = false;
};

inline constexpr double kPairingTol = 1e-7;

/// Runs the exchange through `channel` (an internal MemoryChannel when null).
/// A pair that fails coma_check at kPairingTol is flagged, not rejected.
ExchangeTranscript run_exchange(const WalshMatrix& a, const WalshMatrix& b, const Signal& s,
                                MessageChannel* channel = nullptr);

std::string transcript_to_json(const ExchangeTranscript& t);

}  // namespace gwalsh
