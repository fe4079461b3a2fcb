#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "gwalsh/error.hpp"

namespace gwalsh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Unitarity tolerance applied to matrices read from files.
inline constexpr double kExternalTol = 1e-8;
/// Unitarity tolerance every generator in this library must meet.
inline constexpr double kGeneratedTol = 1e-10;

/// An N x N unitary matrix whose row 0 is the constant 1/sqrt(N).
///
/// Row 0 is never taken from the input: validate() checks it against
/// 1/sqrt(N) and then overwrites it with that value, so every instance
/// carries the exact constant row. Instances are immutable.
class WalshMatrix {
 public:
  /// Checks shape, the constant row, unitarity (max |A*A - I| <= tol) and
  /// the zero row sums of rows 1..N-1 (within tol).
  static WalshMatrix validate(const ComplexMatrix& entries, double tol);

  int n() const noexcept { return static_cast<int>(entries_.rows()); }
  double tol() const noexcept { return tol_; }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }

  /// sqrt(N) * A with row 0 set to exactly 1. These are the step heights
  /// of the functions m_i, and the factors of every Walsh function value.
  const ComplexMatrix& scaled() const noexcept { return scaled_; }

  bool is_real() const noexcept { return real_; }

  /// max_ij |(A*A - I)_ij|
  double unitarity_defect() const;
  /// max over rows i >= 1 of |sum_j a_ij|
  double row_sum_defect() const;

 private:
  WalshMatrix(ComplexMatrix entries, double tol);

  ComplexMatrix entries_;
  ComplexMatrix scaled_;
  double tol_;
  bool real_;
};

/// max_ij |(M*M - I)_ij| for an arbitrary square matrix.
double unitarity_defect(const ComplexMatrix& m);

enum class RowChoice { Second, Third };
enum class Branch { Plus, Minus };

/// Index pair of non-constant rows, 0-based (row 0 is the constant row).
struct RowPair {
  int l = 1;
  int k = 1;
  friend bool operator==(const RowPair&, const RowPair&) = default;
};

/// Real 3x3 Walsh matrix whose chosen row (second or third) begins with `a`.
///
/// The chosen row (a, y, z) is fixed by y + z = -a and y^2 + z^2 = 1 - a^2;
/// y is the root (-a +/- sqrt(2 - 3a^2)) / 2 picked by `branch`. The
/// remaining row is the cross product that makes det A = +1. Requires
/// |a| <= sqrt(2/3), otherwise OutOfRange.
WalshMatrix generate_n3(double a, RowChoice row, Branch branch);

/// Random Walsh matrix of size n, a pure function of its arguments.
///
/// Rows 1..n-1 come from Gaussian vectors (see Rng) orthonormalized by
/// modified Gram-Schmidt, with two passes, against row 0 and the rows
/// already accepted. A draw losing more than 1 - 1e-8 of its norm is
/// redrawn, at most 8 times per row, then DegenerateDraw is thrown.
WalshMatrix generate_random(int n, std::uint64_t seed, bool complex_entries);

/// sum_j B(l, j) * conj(A(k, j)), i.e. <row_l(B), row_k(A)> in C^N.
Complex row_inner(const WalshMatrix& a, const WalshMatrix& b, int l, int k);

}  // namespace gwalsh
