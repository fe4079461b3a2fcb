#include "gwalsh/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gwalsh/basis.hpp"
#include "gwalsh/signal_io.hpp"

namespace gwalsh {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw Error(ErrorCode::IncompatibleGrids, "common refinement exceeds 64-bit coordinates");
  return a * b;
}

std::uint64_t common_cells(std::uint64_t m1, std::uint64_t m2) {
  return checked_mul(m1 / std::gcd(m1, m2), m2);
}

// Coefficients of f against the base-N system at resolution `level`, for a
// level where every W_n, n < N^level, is constant on cells.
struct Expansion {
  int level;
  CoefficientVector coeffs;
};

Expansion expand(const WalshMatrix& a, const Signal& s, int q_eval) {
  // On its own base f is F_{s.q}-measurable, so going down to s.q keeps the
  // coefficients exact and lets higher truncations reproduce f.
  const int level = s.base() == a.n() ? std::max(q_eval, s.q()) : q_eval;
  const Signal projected = cell_average(s, a.n(), level);
  return {level, dwt_fast(a, projected)};
}

Signal truncated_sum(const WalshMatrix& a, const Expansion& e, std::uint64_t k, int q_eval) {
  std::vector<Complex> c = e.coeffs.coeffs();
  for (std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(k, c.size()));
       n < c.size(); ++n)
    c[n] = Complex(0.0, 0.0);
  Signal fine = idwt(a, CoefficientVector(a.n(), e.level, std::move(c)));
  if (e.level == q_eval) return fine;
  return cell_average(fine, q_eval);
}

void check_truncation(const WalshMatrix& a, std::uint64_t k, int q_eval) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "truncation k must be >= 1");
  if (q_eval < 0) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 0");
  if (k > checked_pow(a.n(), q_eval))
    throw Error(ErrorCode::ResolutionTooCoarse,
                "k = " + std::to_string(k) + " exceeds N^q_eval = " +
                    std::to_string(checked_pow(a.n(), q_eval)));
}

double max_abs_diff(const Signal& x, const Signal& y) {
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) worst = std::max(worst, std::abs(x[j] - y[j]));
  return worst;
}

}  // namespace

Signal cell_average(const Signal& s, int q_target) {
  return cell_average(s, s.base(), q_target);
}

Signal cell_average(const Signal& s, int base, int q_target) {
  if (q_target < 0) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 0");
  const std::uint64_t src = s.size();
  const std::uint64_t dst = checked_pow(base, q_target);
  // Source cell i is [i*dst, (i+1)*dst) and target cell j is
  // [j*src, (j+1)*src) in units of 1/(src*dst).
  checked_mul(src, dst);

  std::vector<Complex> out(dst, Complex(0.0, 0.0));
  for (std::uint64_t j = 0; j < dst; ++j) {
    const std::uint64_t lo = j * src;
    const std::uint64_t hi = lo + src;
    const std::uint64_t first = lo / dst;
    const std::uint64_t last = std::min(src, (hi + dst - 1) / dst);
    if (last - first == 1) {
      out[j] = s[first];
      continue;
    }
    Complex acc(0.0, 0.0);
    for (std::uint64_t i = first; i < last; ++i) {
      const std::uint64_t a = std::max(lo, i * dst);
      const std::uint64_t b = std::min(hi, (i + 1) * dst);
      acc += s[i] * static_cast<double>(b - a);
    }
    out[j] = acc / static_cast<double>(src);
  }
  return {base, q_target, std::move(out)};
}

ErrorNorms difference_norms(const Signal& x, const Signal& y) {
  const std::uint64_t total = common_cells(x.size(), y.size());
  const std::uint64_t sx = total / x.size();
  const std::uint64_t sy = total / y.size();
  ErrorNorms out;
  double l2sq = 0.0;
  std::uint64_t pos = 0;
  while (pos < total) {
    const std::uint64_t ix = pos / sx;
    const std::uint64_t iy = pos / sy;
    const std::uint64_t next = std::min((ix + 1) * sx, (iy + 1) * sy);
    const double weight = static_cast<double>(next - pos) / static_cast<double>(total);
    const double d = std::abs(x[ix] - y[iy]);
    out.sup = std::max(out.sup, d);
    out.l1 += d * weight;
    l2sq += d * d * weight;
    pos = next;
  }
  out.l2 = std::sqrt(l2sq);
  return out;
}

double l1_norm(const Signal& s) {
  double sum = 0.0;
  for (const Complex& v : s.values()) sum += std::abs(v);
  return sum / static_cast<double>(s.size());
}

double linf_norm(const Signal& s) {
  double worst = 0.0;
  for (const Complex& v : s.values()) worst = std::max(worst, std::abs(v));
  return worst;
}

PartialSumReport partial_sum(const WalshMatrix& a, const Signal& s, std::uint64_t k,
                             int q_eval) {
  check_truncation(a, k, q_eval);
  const Expansion e = expand(a, s, q_eval);
  Signal values = truncated_sum(a, e, k, q_eval);
  const ErrorNorms error = difference_norms(values, s);
  return {k, q_eval, std::move(values), error};
}

MartingaleReport martingale_check(const WalshMatrix& a, const Signal& s, int q) {
  const std::uint64_t coarse = checked_pow(a.n(), q);
  const Signal s_q = partial_sum(a, s, coarse, q).values;
  const Signal s_next = partial_sum(a, s, coarse * static_cast<std::uint64_t>(a.n()), q + 1).values;
  MartingaleReport r;
  r.exp_residual = max_abs_diff(s_q, cell_average(s, a.n(), q));
  r.tower_residual = max_abs_diff(cell_average(s_next, q), s_q);
  return r;
}

NormBoundReport norm_bound_check(const WalshMatrix& a, const Signal& s, int q) {
  const double l1 = l1_norm(s);
  const double linf = linf_norm(s);
  if (l1 == 0.0) throw Error(ErrorCode::ZeroSignal, "norm ratios undefined for f = 0");
  const Signal sum = partial_sum(a, s, checked_pow(a.n(), q), q).values;
  return {l1_norm(sum) / l1, linf_norm(sum) / linf};
}

std::vector<SweepRow> convergence_sweep(const WalshMatrix& a, const Signal& s,
                                        std::vector<std::uint64_t> k_list, int q_eval) {
  std::sort(k_list.begin(), k_list.end());
  for (std::uint64_t k : k_list) check_truncation(a, k, q_eval);
  std::vector<SweepRow> rows;
  if (k_list.empty()) return rows;
  const Expansion e = expand(a, s, q_eval);
  rows.reserve(k_list.size());
  for (std::uint64_t k : k_list)
    rows.push_back({k, difference_norms(truncated_sum(a, e, k, q_eval), s)});
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "k,sup_error,l1_error,l2_error\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.k) + "," + format_number(r.error.sup) + "," +
           format_number(r.error.l1) + "," + format_number(r.error.l2) + "\n";
  }
  return out;
}

}  // namespace gwalsh
