#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "fixtures.hpp"
#include "gwalsh/basis.hpp"
#include "gwalsh/protocol.hpp"
#include "gwalsh/rng.hpp"

using namespace gwalsh;
using fixtures::max_abs_diff;

namespace {

double max_entry_diff(const WalshMatrix& x, const WalshMatrix& y) {
  return (x.entries() - y.entries()).cwiseAbs().maxCoeff();
}

Signal random_signal(Rng& rng, int base, int q) {
  std::vector<Complex> v(checked_pow(base, q));
  for (Complex& x : v) x = rng.uniform(-2, 2);
  return Signal(base, q, std::move(v));
}

// Brute-force pairing residual, sum over all row pairs including row 0.
double coma_brute(const WalshMatrix& a, const WalshMatrix& b) {
  double worst = 0.0;
  for (int l = 0; l < a.n(); ++l)
    for (int k = 0; k < a.n(); ++k) {
      Complex lhs(0, 0), rhs(0, 0);
      for (int j = 0; j < a.n(); ++j) {
        lhs += b(l, j) * std::conj(a(k, j));
        rhs += a(l, j) * std::conj(b(k, j));
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

// Rows 1, 2 of a rotated by theta. For N = 3 real matrices the pairing
// partners of A are A itself and the reflections of its rows, so a rotation
// by theta not a multiple of pi is a non-partner.
WalshMatrix rotated(const WalshMatrix& a, double theta) {
  ComplexMatrix e = a.entries();
  e.row(1) = std::cos(theta) * a.entries().row(1) + std::sin(theta) * a.entries().row(2);
  e.row(2) = -std::sin(theta) * a.entries().row(1) + std::cos(theta) * a.entries().row(2);
  return WalshMatrix::validate(e, kGeneratedTol);
}

}  // namespace

TEST_CASE("companion at r = 0.2 matches the printed matrix") {
  const WalshMatrix b = solve_b_n3(fixtures::triadic_a(), 0.2, Branch::Minus);
  CHECK(max_entry_diff(b, fixtures::printed_b()) < 1e-7);
  CHECK(b(2, 2).real() == 0.2);
  CHECK(b.unitarity_defect() <= kGeneratedTol);
}

TEST_CASE("companion family property") {
  const WalshMatrix a = fixtures::triadic_a();
  for (Branch br : {Branch::Plus, Branch::Minus}) {
    const CompanionFamily fam = companion_family(a, br);
    CHECK(fam.r_max == doctest::Approx(std::sqrt(2.0 / 3.0)));
    for (int i = 0; i <= 100; ++i) {
      const double r = fam.r_max * (-1.0 + i / 50.0);
      REQUIRE(fam.admissible(r));
      const WalshMatrix b = fam.member(r);
      CHECK(b(2, 2).real() == r);
      CHECK(coma_check(a, b, 1e-10).holds);
      CHECK(coma_brute(a, b) < 1e-10);
    }
  }
  CHECK_FALSE(companion_family(a, Branch::Plus).admissible(0.82));
  try {
    solve_b_n3(a, 0.82, Branch::Plus);
    FAIL("expected NoRealSolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRealSolution);
  }
}

TEST_CASE("companion family for random real matrices") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WalshMatrix a = generate_random(3, seed, false);
    const CompanionFamily fam = companion_family(a, seed % 2 ? Branch::Plus : Branch::Minus);
    Rng rng(seed);
    const double r = rng.uniform(-0.95, 0.95) * fam.r_max;
    const WalshMatrix b = fam.member(r);
    CHECK(coma_brute(a, b) < 1e-10);
    CHECK(comm_check(a, b, 2, 1e-9).holds);
  }
}

TEST_CASE("coma_check and comm_check agree on non-pairs") {
  const WalshMatrix a = fixtures::triadic_a();
  const WalshMatrix c = rotated(a, 0.7);
  const ComaReport coma = coma_check(a, c, 1e-9);
  const CommReport comm = comm_check(a, c, 2, 1e-9);
  CHECK_FALSE(coma.holds);
  CHECK_FALSE(comm.holds);
  CHECK(coma.worst_pair == RowPair{1, 2});
  CHECK(comm.degree_one_residual == doctest::Approx(coma.worst_residual));
  CHECK(coma_check(a, a, 1e-12).holds);
  CHECK(coma_brute(a, c) == doctest::Approx(coma.worst_residual));
}

TEST_CASE("real 3x3 partners are exactly the reflections") {
  const WalshMatrix a = fixtures::triadic_a();
  for (int i = 1; i < 12; ++i) {
    const double theta = 0.5 * i;
    CHECK_FALSE(coma_check(a, rotated(a, theta), 1e-6).holds);
    ComplexMatrix e = rotated(a, theta).entries();
    e.row(2) *= -1.0;
    CHECK(coma_check(a, WalshMatrix::validate(e, kGeneratedTol), 1e-12).holds);
  }
}

TEST_CASE("complex pairing needs the diagonal") {
  // B = A with row 1 multiplied by i satisfies every off-diagonal condition
  const WalshMatrix a = generate_random(3, 8, false);
  ComplexMatrix e = a.entries();
  e.row(1) *= Complex(0, 1);
  const WalshMatrix b = WalshMatrix::validate(e, 1e-10);
  const ComaReport r = coma_check(a, b, 1e-9);
  CHECK_FALSE(r.holds);
  CHECK(r.worst_pair == RowPair{1, 1});
  CHECK_FALSE(comm_check(a, b, 1, 1e-9).holds);
}

TEST_CASE("pairing constraints for N = 3 are one equation") {
  const MaskedConstraintSystem sys = pairing_constraints(fixtures::triadic_a());
  REQUIRE(sys.equations.size() == 1);
  // unknowns b_1_* = (x, y, z), b_2_* = (p, q, r)
  const std::vector<double> expected = {1 / std::sqrt(6.0), -std::sqrt(6.0) / 3,
                                        1 / std::sqrt(6.0), 1 / std::sqrt(2.0),
                                        0.0, -1 / std::sqrt(2.0)};
  const std::vector<double>& c = sys.equations[0].coeffs;
  const double scale = c[0] / expected[0];
  CHECK(scale != 0.0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(c[i] == doctest::Approx(scale * expected[i]));
}

TEST_CASE("masking scales equations and is deterministic") {
  const WalshMatrix a = generate_random(4, 2, false);
  const MaskedConstraintSystem plain = pairing_constraints(a);
  const MaskedConstraintSystem m1 = mask_constraints(a, 99);
  const MaskedConstraintSystem m2 = mask_constraints(a, 99);
  REQUIRE(plain.equations.size() == 3);
  REQUIRE(m1.equations.size() == 3);
  for (std::size_t e = 0; e < 3; ++e) {
    CHECK(m1.equations[e].coeffs == m2.equations[e].coeffs);
    const std::vector<double>& pc = plain.equations[e].coeffs;
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < pc.size(); ++i)
      if (std::abs(pc[i]) > std::abs(pc[pivot])) pivot = i;
    const double f = m1.equations[e].coeffs[pivot] / pc[pivot];
    CHECK(std::abs(f) >= 0.5);
    CHECK(std::abs(f) <= 2.0);
    for (std::size_t i = 0; i < plain.unknown_count(); ++i)
      CHECK(m1.equations[e].coeffs[i] == doctest::Approx(f * plain.equations[e].coeffs[i]));
  }
  const WalshMatrix b = solve_b_n3(fixtures::triadic_a(), 0.3, Branch::Plus);
  const MaskedConstraintSystem t = mask_constraints(fixtures::triadic_a(), 5);
  CHECK(constraint_residual(t, b) < 1e-12);
  CHECK(constraint_residual(pairing_constraints(fixtures::triadic_a()), b) < 1e-12);
}

TEST_CASE("complex constraint count") {
  const MaskedConstraintSystem sys = pairing_constraints(generate_random(3, 0, true));
  CHECK(sys.complex_unknowns);
  CHECK(sys.unknown_count() == 12);
  CHECK(sys.equations.size() == 4);  // Re and Im of (1,2), Im of (1,1) and (2,2)
  CHECK(unknown_name(3, 0) == "b_1_0");
  CHECK(unknown_name(3, 6 + 5) == "b_2_2_im");
}

TEST_CASE("masked system JSON round trip") {
  const MaskedConstraintSystem m = mask_constraints(generate_random(4, 3, false), 17);
  const MaskedConstraintSystem back = masked_from_json(masked_to_json(m));
  CHECK(back.n == 4);
  REQUIRE(back.equations.size() == m.equations.size());
  for (std::size_t e = 0; e < m.equations.size(); ++e)
    CHECK(back.equations[e].coeffs == m.equations[e].coeffs);
  CHECK_THROWS_AS(masked_from_json("{not json"), Error);
}

TEST_CASE("numeric solver finds a non-trivial pair") {
  for (int n : {3, 4}) {
    const WalshMatrix a = generate_random(n, 50 + n, false);
    const MaskedConstraintSystem m = mask_constraints(a, 1);
    const WalshMatrix b = solve_b_numeric(a, m, 7, 1e-10);
    CHECK(max_entry_diff(a, b) >= 0.1);
    CHECK(coma_check(a, b, 1e-9).holds);
    CHECK(b.unitarity_defect() <= 1e-10);
    CHECK(constraint_residual(m, b) <= 1e-9);
  }
  const WalshMatrix a = fixtures::triadic_a();
  const WalshMatrix b = solve_b_numeric(a, mask_constraints(a, 3), 0, 1e-10);
  CHECK(coma_check(a, b, 1e-9).holds);
}

TEST_CASE("numeric solver over complex unknowns") {
  const WalshMatrix a = generate_random(3, 21, true);
  const WalshMatrix b = solve_b_numeric(a, mask_constraints(a, 2, true), 4, 1e-10);
  CHECK(coma_check(a, b, 1e-9).holds);
  CHECK(comm_check(a, b, 2, 1e-8).holds);
}

TEST_CASE("numeric solver reports failure") {
  // for N = 3 a random start pairs with A half the time, so use N = 4
  const WalshMatrix a = generate_random(4, 6, false);
  NumericSolveOptions opt;
  opt.max_restarts = 1;
  opt.max_iterations = 1;
  try {
    solve_b_numeric(a, mask_constraints(a, 3), 0, 1e-14, opt);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}

TEST_CASE("exchange on the worked example") {
  const ExchangeTranscript t =
      run_exchange(fixtures::triadic_a(), fixtures::printed_b(), fixtures::triadic_f());
  CHECK_FALSE(t.pairing_violated);
  CHECK(t.max_error <= 1e-6);
  CHECK(std::abs(t.recovered[cell_of(0.4, 3, 3).j] - 1.0) <= 1e-6);
}

TEST_CASE("exchange with B = A is the identity at each hop") {
  const WalshMatrix a = fixtures::triadic_a();
  const ExchangeTranscript t = run_exchange(a, a, fixtures::triadic_f());
  CHECK(max_abs_diff(t.w2.values(), fixtures::triadic_f().values()) <= 1e-10);
  CHECK(t.max_error <= 1e-10);
}

TEST_CASE("exchange property over companion pairs") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const WalshMatrix a = generate_random(3, 500 + trial, false);
    const CompanionFamily fam = companion_family(a, trial % 2 ? Branch::Plus : Branch::Minus);
    const WalshMatrix b = fam.member(rng.uniform(-0.9, 0.9) * fam.r_max);
    const int q = 1 + trial % 4;
    const ExchangeTranscript t = run_exchange(a, b, random_signal(rng, 3, q));
    CHECK_FALSE(t.pairing_violated);
    CHECK(t.max_error <= 1e-7);
  }
}

TEST_CASE("exchange flags a violated pairing and still completes") {
  const WalshMatrix a = fixtures::triadic_a();
  const ExchangeTranscript t =
      run_exchange(a, rotated(a, 1.0), fixtures::triadic_f());
  CHECK(t.pairing_violated);
  CHECK(t.max_error > 1e-3);
  CHECK_THROWS_AS(run_exchange(a, generate_random(2, 1, false), fixtures::triadic_f()), Error);
}

TEST_CASE("exchange through files matches memory") {
  const auto dir = std::filesystem::temp_directory_path() / "gwalsh_exchange_test";
  std::filesystem::remove_all(dir);
  DirectoryChannel channel(dir);
  const WalshMatrix a = fixtures::triadic_a();
  const WalshMatrix b = solve_b_n3(a, -0.4, Branch::Plus);
  const ExchangeTranscript f = run_exchange(a, b, fixtures::triadic_f(), &channel);
  const ExchangeTranscript m = run_exchange(a, b, fixtures::triadic_f());
  CHECK(f.recovered.values() == m.recovered.values());
  CHECK(std::filesystem::exists(dir / "w1.csv"));
  CHECK(transcript_to_json(f) == transcript_to_json(m));
  std::filesystem::remove_all(dir);
}
