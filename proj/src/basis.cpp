#include "gwalsh/basis.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gwalsh {

namespace {

void check_unit_interval(double x) {
  if (!(x >= 0.0 && x < 1.0))
    throw Error(ErrorCode::OutOfDomain, "x = " + std::to_string(x) + " not in [0, 1)");
}

void check_base(int base) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "base must be >= 2");
}

}  // namespace

std::uint64_t DigitString::value() const {
  std::uint64_t v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    v = v * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(*it);
  return v;
}

std::uint64_t checked_pow(int base, int exp) {
  check_base(base);
  if (exp < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  std::uint64_t v = 1;
  const auto b = static_cast<std::uint64_t>(base);
  for (int i = 0; i < exp; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / b)
      throw Error(ErrorCode::Overflow,
                  std::to_string(base) + "^" + std::to_string(exp) + " overflows");
    v *= b;
  }
  return v;
}

int digit_count(std::uint64_t n, int base) {
  check_base(base);
  int count = 1;
  for (n /= static_cast<std::uint64_t>(base); n > 0; n /= static_cast<std::uint64_t>(base))
    ++count;
  return count;
}

DigitString digits(std::uint64_t n, int base, std::optional<int> pad_to) {
  check_base(base);
  DigitString out{base, {}};
  const int len = pad_to ? *pad_to : digit_count(n, base);
  if (pad_to) {
    if (*pad_to < 0) throw Error(ErrorCode::InvalidArgument, "negative pad length");
    bool fits = true;
    try {
      fits = n < checked_pow(base, *pad_to);
    } catch (const Error&) {
      fits = true;  // base^pad_to exceeds every 64-bit n
    }
    if (!fits)
      throw Error(ErrorCode::Overflow,
                  std::to_string(n) + " needs more than " + std::to_string(*pad_to) + " digits");
  }
  out.digits.resize(static_cast<std::size_t>(len));
  for (int t = 0; t < len; ++t) {
    out.digits[t] = static_cast<int>(n % static_cast<std::uint64_t>(base));
    n /= static_cast<std::uint64_t>(base);
  }
  return out;
}

double r_map(double x, int base) {
  check_base(base);
  check_unit_interval(x);
  const double y = base * x;
  return y - std::floor(y);
}

CellIndex cell_of(double x, int base, int q) {
  check_unit_interval(x);
  const std::uint64_t cells = checked_pow(base, q);
  const double scaled = x * static_cast<double>(cells);
  auto j = static_cast<std::uint64_t>(std::floor(scaled));
  if (j >= cells) j = cells - 1;
  return {q, j};
}

Complex m_eval(const WalshMatrix& a, int i, double x) {
  if (i < 0 || i >= a.n()) throw Error(ErrorCode::BadRow, "row " + std::to_string(i));
  const CellIndex c = cell_of(x, a.n(), 1);
  return a.scaled()(i, static_cast<Eigen::Index>(c.j));
}

Complex walsh_at_cell(const WalshMatrix& a, std::uint64_t n, CellIndex cell) {
  const int base = a.n();
  const auto b = static_cast<std::uint64_t>(base);
  const std::uint64_t cells = checked_pow(base, cell.q);
  if (n >= cells)
    throw Error(ErrorCode::Overflow,
                "index " + std::to_string(n) + " needs a finer grid than q = " +
                    std::to_string(cell.q));
  if (cell.j >= cells) throw Error(ErrorCode::OutOfDomain, "cell index out of range");

  const ComplexMatrix& s = a.scaled();
  Complex value(1.0, 0.0);
  std::uint64_t place = cells / b;  // weight of the most significant cell digit
  for (int t = 0; t < cell.q && n > 0; ++t) {
    const auto row = static_cast<Eigen::Index>(n % b);
    const auto col = static_cast<Eigen::Index>((cell.j / place) % b);
    if (row != 0) value *= s(row, col);
    n /= b;
    place /= b;
  }
  return value;
}

Complex walsh_eval(const WalshMatrix& a, std::uint64_t n, double x) {
  const int p = digit_count(n, a.n());
  return walsh_at_cell(a, n, cell_of(x, a.n(), p));
}

std::vector<Complex> walsh_on_grid(const WalshMatrix& a, std::uint64_t n, int q) {
  const std::uint64_t cells = checked_pow(a.n(), q);
  if (n >= cells)
    throw Error(ErrorCode::Overflow,
                "index " + std::to_string(n) + " >= N^q = " + std::to_string(cells));
  std::vector<Complex> out(cells);
  for (std::uint64_t j = 0; j < cells; ++j) out[j] = walsh_at_cell(a, n, {q, j});
  return out;
}

Complex dirichlet_kernel(const WalshMatrix& a, int q, double x, double t) {
  check_unit_interval(x);
  check_unit_interval(t);
  const std::uint64_t terms = checked_pow(a.n(), q);
  Complex sum(0.0, 0.0);
  for (std::uint64_t n = 0; n < terms; ++n)
    sum += walsh_eval(a, n, x) * std::conj(walsh_eval(a, n, t));
  return sum;
}

}  // namespace gwalsh
