#include "gwalsh/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwalsh/rng.hpp"

namespace gwalsh {

namespace {

constexpr int kMaxRedraws = 8;

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double max_row_sum(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 1; i < m.rows(); ++i)
    worst = std::max(worst, std::abs(m.row(i).sum()));
  return worst;
}

}  // namespace

double unitarity_defect(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

WalshMatrix::WalshMatrix(ComplexMatrix entries, double tol)
    : entries_(std::move(entries)), tol_(tol) {
  const int size = n();
  scaled_ = entries_ * std::sqrt(static_cast<double>(size));
  scaled_.row(0).setOnes();
  real_ = entries_.imag().isZero(0.0);
}

WalshMatrix WalshMatrix::validate(const ComplexMatrix& entries, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (entries.rows() != entries.cols() || entries.rows() < 2)
    throw Error(ErrorCode::BadDimension,
                "expected a square matrix with N >= 2, got " +
                    std::to_string(entries.rows()) + "x" +
                    std::to_string(entries.cols()));
  if (!all_finite(entries))
    throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");

  const auto size = entries.rows();
  const double c = 1.0 / std::sqrt(static_cast<double>(size));
  for (Eigen::Index j = 0; j < size; ++j) {
    const double dev = std::abs(entries(0, j) - c);
    if (dev > tol)
      throw Error(ErrorCode::BadFirstRow,
                  "entry (0," + std::to_string(j) + ") deviates from 1/sqrt(N) by " +
                      std::to_string(dev));
  }

  ComplexMatrix snapped = entries;
  snapped.row(0).setConstant(Complex(c, 0.0));

  const double defect = gwalsh::unitarity_defect(snapped);
  if (defect > tol)
    throw Error(ErrorCode::NotUnitary,
                "max |A*A - I| = " + std::to_string(defect) + " exceeds tol");
  const double sums = max_row_sum(snapped);
  if (sums > tol)
    throw Error(ErrorCode::NotUnitary,
                "non-constant row sum " + std::to_string(sums) + " exceeds tol");

  return WalshMatrix(std::move(snapped), tol);
}

double WalshMatrix::unitarity_defect() const { return gwalsh::unitarity_defect(entries_); }

double WalshMatrix::row_sum_defect() const { return max_row_sum(entries_); }

WalshMatrix generate_n3(double a, RowChoice row, Branch branch) {
  if (!std::isfinite(a))
    throw Error(ErrorCode::InvalidArgument, "entry must be finite");
  double disc = 2.0 - 3.0 * a * a;
  // a = sqrt(2/3) rounds to a value with a slightly negative discriminant
  if (disc < 0.0 && disc > -1e-14) disc = 0.0;
  if (disc < 0.0)
    throw Error(ErrorCode::OutOfRange,
                "|a| = " + std::to_string(std::abs(a)) + " exceeds sqrt(2/3)");

  const double root = std::sqrt(disc);
  const double y = branch == Branch::Plus ? (-a + root) / 2.0 : (-a - root) / 2.0;
  const double z = -a - y;

  const double c = 1.0 / std::sqrt(3.0);
  const Eigen::Vector3d ones(c, c, c);
  const Eigen::Vector3d chosen(a, y, z);
  Eigen::Matrix3d m;
  m.row(0) = ones.transpose();
  if (row == RowChoice::Second) {
    m.row(1) = chosen.transpose();
    m.row(2) = ones.cross(chosen).transpose();
  } else {
    m.row(2) = chosen.transpose();
    m.row(1) = chosen.cross(ones).transpose();
  }
  return WalshMatrix::validate(m.cast<Complex>(), kGeneratedTol);
}

WalshMatrix generate_random(int n, std::uint64_t seed, bool complex_entries) {
  if (n < 2) throw Error(ErrorCode::BadDimension, "n must be >= 2");
  Rng rng(seed);
  ComplexMatrix m(n, n);
  m.row(0).setConstant(Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));

  for (int i = 1; i < n; ++i) {
    bool accepted = false;
    for (int attempt = 0; attempt <= kMaxRedraws && !accepted; ++attempt) {
      Eigen::VectorXcd v(n);
      for (int j = 0; j < n; ++j) {
        const double re = rng.normal();
        const double im = complex_entries ? rng.normal() : 0.0;
        v(j) = Complex(re, im);
      }
      const double before = v.norm();
      for (int pass = 0; pass < 2; ++pass)
        for (int p = 0; p < i; ++p) {
          const Eigen::VectorXcd u = m.row(p).transpose();
          v -= u.dot(v) * u;  // Eigen's dot conjugates the left operand
        }
      const double after = v.norm();
      if (after > 1e-8 * before) {
        m.row(i) = (v / after).transpose();
        accepted = true;
      }
    }
    if (!accepted)
      throw Error(ErrorCode::DegenerateDraw,
                  "row " + std::to_string(i) + " degenerate after retries");
  }
  return WalshMatrix::validate(m, kGeneratedTol);
}

Complex row_inner(const WalshMatrix& a, const WalshMatrix& b, int l, int k) {
  if (a.n() != b.n())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  if (l < 0 || k < 0 || l >= a.n() || k >= a.n())
    throw Error(ErrorCode::BadRow, "row index out of range");
  Complex sum(0.0, 0.0);
  for (int j = 0; j < a.n(); ++j) sum += b(l, j) * std::conj(a(k, j));
  return sum;
}

}  // namespace gwalsh
