// Numeric solver for the companion matrix B from a published system.

#include <algorithm>
#include <cmath>
#include <limits>

#include "gwalsh/protocol.hpp"

namespace gwalsh {

namespace {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Residuals and Jacobian of the full system in the unknowns of rows 1..N-1:
// unit norms, zero sums, pairwise orthogonality, then the masked equations.
class System {
 public:
  explicit System(const MaskedConstraintSystem& m)
      : m_(m), n_(m.n), per_(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n - 1)) {
    const std::size_t rows = static_cast<std::size_t>(n_ - 1);
    std::size_t count = rows;                                  // norms
    count += m_.complex_unknowns ? 2 * rows : rows;            // sums
    const std::size_t pairs = rows * (rows - 1) / 2;
    count += m_.complex_unknowns ? 2 * pairs : pairs;          // orthogonality
    count += m_.equations.size();
    residual_count_ = count;
  }

  std::size_t unknowns() const { return m_.unknown_count(); }
  std::size_t residuals() const { return residual_count_; }

  void evaluate(const Vector& x, Vector& r, Matrix* jac) const {
    r.setZero(static_cast<Eigen::Index>(residual_count_));
    if (jac) jac->setZero(static_cast<Eigen::Index>(residual_count_),
                          static_cast<Eigen::Index>(unknowns()));
    Eigen::Index e = 0;
    const bool cx = m_.complex_unknowns;

    for (int i = 1; i < n_; ++i, ++e) {
      double s = -1.0;
      for (int j = 0; j < n_; ++j) {
        s += x(re(i, j)) * x(re(i, j));
        if (jac) (*jac)(e, re(i, j)) = 2.0 * x(re(i, j));
        if (cx) {
          s += x(im(i, j)) * x(im(i, j));
          if (jac) (*jac)(e, im(i, j)) = 2.0 * x(im(i, j));
        }
      }
      r(e) = s;
    }
    for (int i = 1; i < n_; ++i) {
      for (int part = 0; part < (cx ? 2 : 1); ++part, ++e) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) {
          const Eigen::Index u = part == 0 ? re(i, j) : im(i, j);
          s += x(u);
          if (jac) (*jac)(e, u) = 1.0;
        }
        r(e) = s;
      }
    }
    for (int i = 1; i < n_; ++i)
      for (int k = i + 1; k < n_; ++k) {
        // Re: sum X_i X_k + Y_i Y_k ; Im: sum Y_i X_k - X_i Y_k
        double s = 0.0;
        for (int j = 0; j < n_; ++j) {
          s += x(re(i, j)) * x(re(k, j));
          if (jac) {
            (*jac)(e, re(i, j)) += x(re(k, j));
            (*jac)(e, re(k, j)) += x(re(i, j));
          }
          if (cx) {
            s += x(im(i, j)) * x(im(k, j));
            if (jac) {
              (*jac)(e, im(i, j)) += x(im(k, j));
              (*jac)(e, im(k, j)) += x(im(i, j));
            }
          }
        }
        r(e++) = s;
        if (!cx) continue;
        s = 0.0;
        for (int j = 0; j < n_; ++j) {
          s += x(im(i, j)) * x(re(k, j)) - x(re(i, j)) * x(im(k, j));
          if (jac) {
            (*jac)(e, im(i, j)) += x(re(k, j));
            (*jac)(e, re(k, j)) += x(im(i, j));
            (*jac)(e, re(i, j)) -= x(im(k, j));
            (*jac)(e, im(k, j)) -= x(re(i, j));
          }
        }
        r(e++) = s;
      }
    for (const LinearEquation& eq : m_.equations) {
      double s = -eq.rhs;
      for (std::size_t u = 0; u < eq.coeffs.size(); ++u) {
        s += eq.coeffs[u] * x(static_cast<Eigen::Index>(u));
        if (jac) (*jac)(e, static_cast<Eigen::Index>(u)) = eq.coeffs[u];
      }
      r(e++) = s;
    }
  }

  Vector pack(const ComplexMatrix& b) const {
    Vector x(static_cast<Eigen::Index>(unknowns()));
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        x(re(i, j)) = b(i, j).real();
        if (m_.complex_unknowns) x(im(i, j)) = b(i, j).imag();
      }
    return x;
  }

  ComplexMatrix unpack(const Vector& x) const {
    ComplexMatrix b(n_, n_);
    b.row(0).setConstant(Complex(1.0 / std::sqrt(static_cast<double>(n_)), 0.0));
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        b(i, j) = Complex(x(re(i, j)), m_.complex_unknowns ? x(im(i, j)) : 0.0);
    return b;
  }

 private:
  Eigen::Index re(int i, int j) const { return (i - 1) * n_ + j; }
  Eigen::Index im(int i, int j) const { return static_cast<Eigen::Index>(per_) + re(i, j); }

  const MaskedConstraintSystem& m_;
  int n_;
  std::size_t per_;
  std::size_t residual_count_ = 0;
};

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Levenberg-Marquardt from x; returns the final max residual.
double levenberg_marquardt(const System& sys, Vector& x, int max_iterations, double tol) {
  Vector r;
  Matrix jac;
  sys.evaluate(x, r, &jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  int polish = 0;
  for (int it = 0; it < max_iterations; ++it) {
    if (max_abs(r) <= tol && ++polish > 3) break;
    const Matrix jtj = jac.transpose() * jac;
    const Vector g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 20 && !improved; ++tries) {
      Matrix lhs = jtj;
      lhs.diagonal().array() += lambda;
      const Vector step = lhs.ldlt().solve(-g);
      const Vector trial = x + step;
      Vector tr;
      sys.evaluate(trial, tr, nullptr);
      const double trial_cost = tr.squaredNorm();
      if (trial_cost < cost) {
        x = trial;
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!improved) break;
    sys.evaluate(x, r, &jac);
    cost = r.squaredNorm();
  }
  return max_abs(r);
}

}  // namespace

double constraint_residual(const MaskedConstraintSystem& m, const WalshMatrix& b) {
  if (b.n() != m.n) throw Error(ErrorCode::DimensionMismatch, "system and matrix sizes differ");
  const System sys(m);
  Vector r;
  sys.evaluate(sys.pack(b.entries()), r, nullptr);
  return max_abs(r);
}

WalshMatrix solve_b_numeric(const WalshMatrix& a, const MaskedConstraintSystem& masked,
                            std::uint64_t seed, double tol, const NumericSolveOptions& options) {
  if (masked.n != a.n())
    throw Error(ErrorCode::DimensionMismatch, "system and matrix sizes differ");
  for (const LinearEquation& eq : masked.equations)
    if (eq.coeffs.size() != masked.unknown_count())
      throw Error(ErrorCode::DimensionMismatch, "equation has wrong number of coefficients");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  const System sys(masked);
  double best = std::numeric_limits<double>::infinity();
  const double certify_tol = std::max(kGeneratedTol, tol);

  for (int attempt = 0; attempt < options.max_restarts; ++attempt) {
    const WalshMatrix start =
        generate_random(a.n(), seed + static_cast<std::uint64_t>(attempt), masked.complex_unknowns);
    Vector x = sys.pack(start.entries());
    const double res = levenberg_marquardt(sys, x, options.max_iterations, tol);
    best = std::min(best, res);
    if (res > tol) continue;

    const ComplexMatrix candidate = sys.unpack(x);
    if (options.exclude_trivial &&
        (candidate - a.entries()).cwiseAbs().maxCoeff() < options.min_distance)
      continue;
    try {
      WalshMatrix b = WalshMatrix::validate(candidate, certify_tol);
      if (!coma_check(a, b, certify_tol).holds) continue;
      return b;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "no certified solution after " + std::to_string(options.max_restarts) +
                  " starts; best residual " + std::to_string(best));
}

}  // namespace gwalsh
