#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gwalsh/matrix.hpp"

namespace gwalsh {

/// Piecewise-constant function on [0,1): value[j] on [j/N^q, (j+1)/N^q).
class Signal {
 public:
  Signal(int base, int q, std::vector<Complex> values);
  Signal(int base, int q, std::span<const double> values);

  static Signal constant(int base, int q, Complex value);

  int base() const noexcept { return base_; }
  int q() const noexcept { return q_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex operator[](std::size_t j) const { return values_[j]; }

 private:
  int base_;
  int q_;
  std::vector<Complex> values_;
};

/// Coefficients <f, W_{n,A}>, n = 0..N^q-1 in natural order.
class CoefficientVector {
 public:
  CoefficientVector(int base, int q, std::vector<Complex> coeffs);

  int base() const noexcept { return base_; }
  int q() const noexcept { return q_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  Complex operator[](std::size_t n) const { return coeffs_[n]; }

 private:
  int base_;
  int q_;
  std::vector<Complex> coeffs_;
};

/// c_n = N^-q sum_j v_j conj(W_{n,A}(cell j)), one basis function at a time.
/// O(q N^2q); the reference for dwt_fast.
CoefficientVector dwt_naive(const WalshMatrix& a, const Signal& s);

/// Same result as dwt_naive in q radix-N stages.
///
/// W_{n,A}(cell j) = prod_t sqrt(N) a_{i_t, k_t}, with i_t the t-th least
/// significant digit of n and k_t the t-th most significant digit of j, so
/// the transform is a tensor product of the N x N kernel conj(sqrt(N) A)/N
/// applied along each digit axis of j. Stage t leaves output digit i_t at
/// the position of k_t; a final digit reversal puts c_n at index n.
/// Exactly q N^(q+1) complex multiplies; when multiply_count is non-null,
/// the count of multiplies performed is added to it.
CoefficientVector dwt_fast(const WalshMatrix& a, const Signal& s,
                           std::uint64_t* multiply_count = nullptr);

/// v_j = sum_n c_n W_{n,A}(cell j): digit reversal, then the transposed
/// stages with kernel sqrt(N) A^T.
Signal idwt(const WalshMatrix& a, const CoefficientVector& c,
            std::uint64_t* multiply_count = nullptr);

/// |sum_n |c_n|^2 - N^-q sum_j |v_j|^2|
double parseval_residual(const WalshMatrix& a, const Signal& s);

/// N^-q sum_j |v_j|^2, the squared L2 norm of the step function.
double energy(const Signal& s);

/// Permutation taking n (digits LS-first) to the index whose MS-first digits
/// are the same sequence.
std::vector<std::uint64_t> digit_reversal(int base, int q);

}  // namespace gwalsh
