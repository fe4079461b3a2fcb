#include "gwalsh/transform.hpp"

#include <cmath>
#include <string>

#include "gwalsh/basis.hpp"

namespace gwalsh {

namespace {

void check_length(int base, int q, std::size_t size) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "base must be >= 2");
  if (q < 0) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 0");
  const std::uint64_t expected = checked_pow(base, q);
  if (size != expected)
    throw Error(ErrorCode::BadLength, "expected " + std::to_string(expected) +
                                          " values, got " + std::to_string(size));
}

void check_base(const WalshMatrix& a, int base) {
  if (a.n() != base)
    throw Error(ErrorCode::BaseMismatch, "matrix is " + std::to_string(a.n()) + "x" +
                                             std::to_string(a.n()) + ", data has base " +
                                             std::to_string(base));
}

// Applies y = K x along every digit axis of `data` (length N^q).
template <bool Count>
void apply_stages(const ComplexMatrix& kernel, int q, std::vector<Complex>& data,
                  std::uint64_t& count) {
  const auto n = static_cast<std::size_t>(kernel.rows());
  const std::size_t length = data.size();
  std::vector<Complex> in(n);
  std::size_t stride = length / n;
  for (int t = 0; t < q; ++t, stride /= n) {
    const std::size_t span = stride * n;
    for (std::size_t block = 0; block < length; block += span) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        const std::size_t first = block + offset;
        for (std::size_t d = 0; d < n; ++d) in[d] = data[first + d * stride];
        for (std::size_t i = 0; i < n; ++i) {
          Complex acc(0.0, 0.0);
          for (std::size_t d = 0; d < n; ++d) {
            acc += kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) * in[d];
            if constexpr (Count) ++count;
          }
          data[first + i * stride] = acc;
        }
      }
    }
  }
}

void run_stages(const ComplexMatrix& kernel, int q, std::vector<Complex>& data,
                std::uint64_t* multiply_count) {
  std::uint64_t count = 0;
  if (multiply_count) {
    apply_stages<true>(kernel, q, data, count);
    *multiply_count += count;
  } else {
    apply_stages<false>(kernel, q, data, count);
  }
}

}  // namespace

Signal::Signal(int base, int q, std::vector<Complex> values)
    : base_(base), q_(q), values_(std::move(values)) {
  check_length(base_, q_, values_.size());
}

Signal::Signal(int base, int q, std::span<const double> values)
    : Signal(base, q, std::vector<Complex>(values.begin(), values.end())) {}

Signal Signal::constant(int base, int q, Complex value) {
  return Signal(base, q, std::vector<Complex>(checked_pow(base, q), value));
}

CoefficientVector::CoefficientVector(int base, int q, std::vector<Complex> coeffs)
    : base_(base), q_(q), coeffs_(std::move(coeffs)) {
  check_length(base_, q_, coeffs_.size());
}

std::vector<std::uint64_t> digit_reversal(int base, int q) {
  const std::uint64_t length = checked_pow(base, q);
  const auto b = static_cast<std::uint64_t>(base);
  std::vector<std::uint64_t> rev(length);
  for (std::uint64_t n = 0; n < length; ++n) {
    std::uint64_t m = 0;
    std::uint64_t rest = n;
    for (int t = 0; t < q; ++t) {
      m = m * b + rest % b;
      rest /= b;
    }
    rev[n] = m;
  }
  return rev;
}

CoefficientVector dwt_naive(const WalshMatrix& a, const Signal& s) {
  check_base(a, s.base());
  const std::size_t length = s.size();
  const double scale = 1.0 / static_cast<double>(length);
  std::vector<Complex> c(length);
  for (std::size_t n = 0; n < length; ++n) {
    const std::vector<Complex> w = walsh_on_grid(a, n, s.q());
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < length; ++j) acc += s[j] * std::conj(w[j]);
    c[n] = acc * scale;
  }
  return {s.base(), s.q(), std::move(c)};
}

CoefficientVector dwt_fast(const WalshMatrix& a, const Signal& s,
                           std::uint64_t* multiply_count) {
  check_base(a, s.base());
  const ComplexMatrix kernel = a.scaled().conjugate() / static_cast<double>(a.n());
  std::vector<Complex> data = s.values();
  run_stages(kernel, s.q(), data, multiply_count);

  const std::vector<std::uint64_t> rev = digit_reversal(s.base(), s.q());
  std::vector<Complex> c(data.size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = data[rev[n]];
  return {s.base(), s.q(), std::move(c)};
}

Signal idwt(const WalshMatrix& a, const CoefficientVector& c, std::uint64_t* multiply_count) {
  check_base(a, c.base());
  const ComplexMatrix kernel = a.scaled().transpose();
  const std::vector<std::uint64_t> rev = digit_reversal(c.base(), c.q());
  std::vector<Complex> data(c.size());
  for (std::size_t n = 0; n < data.size(); ++n) data[rev[n]] = c[n];
  run_stages(kernel, c.q(), data, multiply_count);
  return {c.base(), c.q(), std::move(data)};
}

double energy(const Signal& s) {
  double sum = 0.0;
  for (const Complex& v : s.values()) sum += std::norm(v);
  return sum / static_cast<double>(s.size());
}

double parseval_residual(const WalshMatrix& a, const Signal& s) {
  const CoefficientVector c = dwt_fast(a, s);
  double coeff_energy = 0.0;
  for (const Complex& v : c.coeffs()) coeff_energy += std::norm(v);
  return std::abs(coeff_energy - energy(s));
}

}  // namespace gwalsh
