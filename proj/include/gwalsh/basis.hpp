#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gwalsh/matrix.hpp"

namespace gwalsh {

/// Base-N digits, least significant first.
struct DigitString {
  int base = 2;
  std::vector<int> digits;

  std::uint64_t value() const;
};

/// The half-open cell [j/N^q, (j+1)/N^q).
struct CellIndex {
  int q = 0;
  std::uint64_t j = 0;
};

/// base^exp, throwing Overflow when the result does not fit in 64 bits.
std::uint64_t checked_pow(int base, int exp);

/// Number of base-N digits of n; 1 for n = 0.
int digit_count(std::uint64_t n, int base);

/// Digits of n, zero-padded to pad_to when given (Overflow if n >= base^pad_to).
DigitString digits(std::uint64_t n, int base, std::optional<int> pad_to = std::nullopt);

/// (N x) mod 1 for x in [0, 1).
double r_map(double x, int base);

/// The q-cell containing x in [0, 1).
CellIndex cell_of(double x, int base, int q);

/// m_i(x) = sqrt(N) a_{i, floor(N x)}; exactly 1 for i = 0.
Complex m_eval(const WalshMatrix& a, int i, double x);

/// W_{n,A}(x) = prod_t m_{i_t}(r^t x) where i_t are the digits of n.
///
/// Evaluated from the integer index of the cell containing x, at the
/// resolution given by the digit count of n; r is never iterated in
/// floating point.
Complex walsh_eval(const WalshMatrix& a, std::uint64_t n, double x);

/// W_{n,A} on the q-cell `cell`: prod_t sqrt(N) a_{i_t, k_t}, where k_t is
/// the t-th most significant digit of cell.j. Requires n < N^q.
Complex walsh_at_cell(const WalshMatrix& a, std::uint64_t n, CellIndex cell);

/// Values of W_{n,A} on the N^q cells of resolution q.
std::vector<Complex> walsh_on_grid(const WalshMatrix& a, std::uint64_t n, int q);

/// sum_{n < N^q} W_n(x) conj(W_n(t)), summed term by term.
Complex dirichlet_kernel(const WalshMatrix& a, int q, double x, double t);

}  // namespace gwalsh
