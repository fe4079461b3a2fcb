#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwalsh/matrix.hpp"
#include "gwalsh/transform.hpp"

namespace gwalsh {

// Partial sums S_k(f) = sum_{n<k} <f, W_{n,A}> W_{n,A}.
//
// A signal may live on a grid of a different base than the matrix (a dyadic
// step function under a triadic basis). Such grids are related through
// their common refinement with integer endpoints, so every inner product,
// average and norm below is the exact value for the step function, up to
// floating-point rounding.

/// sup, L1 and L2 norms of a step-function difference.
struct ErrorNorms {
  double sup = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

struct PartialSumReport {
  std::uint64_t k = 0;
  int q_eval = 0;
  Signal values;  // S_k(f) on the base-N grid of resolution q_eval
  ErrorNorms error;
};

struct MartingaleReport {
  double exp_residual = 0.0;    // max |S_{N^q} f - E[f | F_q]|
  double tower_residual = 0.0;  // max |E[S_{N^(q+1)} f | F_q] - S_{N^q} f|
};

struct NormBoundReport {
  double l1_ratio = 0.0;
  double linf_ratio = 0.0;
};

struct SweepRow {
  std::uint64_t k = 0;
  ErrorNorms error;
};

/// E[f | F_q] on the grid of the signal's own base.
Signal cell_average(const Signal& s, int q_target);

/// E[f | F_q] on the base-`base` grid: each target cell gets the mean of f
/// over it, from exact overlap lengths. IncompatibleGrids if the common
/// refinement does not fit in 64-bit integer coordinates.
Signal cell_average(const Signal& s, int base, int q_target);

/// Norms of x - y computed on their common refinement.
ErrorNorms difference_norms(const Signal& x, const Signal& y);

double l1_norm(const Signal& s);
double linf_norm(const Signal& s);

/// S_k(f) on the q_eval grid. ResolutionTooCoarse unless k <= N^q_eval, the
/// condition for every W_n with n < k to be constant on q_eval cells.
PartialSumReport partial_sum(const WalshMatrix& a, const Signal& s, std::uint64_t k,
                             int q_eval);

MartingaleReport martingale_check(const WalshMatrix& a, const Signal& s, int q);

/// ||S_{N^q} f|| / ||f|| in L1 and L-infinity. ZeroSignal for f = 0.
NormBoundReport norm_bound_check(const WalshMatrix& a, const Signal& s, int q);

/// One row per truncation, sorted by k. The coefficients are computed once.
std::vector<SweepRow> convergence_sweep(const WalshMatrix& a, const Signal& s,
                                        std::vector<std::uint64_t> k_list, int q_eval);

/// "k,sup_error,l1_error,l2_error" followed by one line per row.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace gwalsh
