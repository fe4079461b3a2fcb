#include "gwalsh/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "gwalsh/basis.hpp"
#include "gwalsh/matrix_io.hpp"
#include "gwalsh/rng.hpp"
#include "gwalsh/signal_io.hpp"

namespace gwalsh {

using nlohmann::json;

namespace {

void check_same_size(const WalshMatrix& a, const WalshMatrix& b) {
  if (a.n() != b.n())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.n()) + "x" + std::to_string(a.n()) + " vs " +
                    std::to_string(b.n()) + "x" + std::to_string(b.n()));
}

// N^q x N^q matrix of grid values, row n = W_{n,A} on the q-cells.
ComplexMatrix grid_matrix(const WalshMatrix& a, int q) {
  const std::uint64_t cells = checked_pow(a.n(), q);
  ComplexMatrix g(static_cast<Eigen::Index>(cells), static_cast<Eigen::Index>(cells));
  for (std::uint64_t n = 0; n < cells; ++n) {
    const std::vector<Complex> w = walsh_on_grid(a, n, q);
    for (std::uint64_t j = 0; j < cells; ++j)
      g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = w[j];
  }
  return g;
}

}  // namespace

ComaReport coma_check(const WalshMatrix& a, const WalshMatrix& b, double tol) {
  check_same_size(a, b);
  ComaReport r;
  for (int l = 1; l < a.n(); ++l)
    for (int k = l; k < a.n(); ++k) {
      const double res = std::abs(row_inner(b, a, l, k) - row_inner(a, b, l, k));
      if (res > r.worst_residual) {
        r.worst_residual = res;
        r.worst_pair = {l, k};
      }
    }
  r.holds = r.worst_residual <= tol;
  return r;
}

CommReport comm_check(const WalshMatrix& a, const WalshMatrix& b, int q, double tol) {
  check_same_size(a, b);
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "comm_check needs q >= 1");
  const ComplexMatrix ga = grid_matrix(a, q);
  const ComplexMatrix gb = grid_matrix(b, q);
  const double scale = 1.0 / static_cast<double>(ga.cols());
  // lhs(l, k) = <W_{l,B}, W_{k,A}>, rhs(l, k) = <W_{l,A}, W_{k,B}>
  const ComplexMatrix lhs = gb * ga.adjoint() * scale;
  const ComplexMatrix rhs = ga * gb.adjoint() * scale;

  CommReport r;
  const auto n = static_cast<Eigen::Index>(a.n());
  for (Eigen::Index l = 0; l < lhs.rows(); ++l)
    for (Eigen::Index k = 0; k < lhs.cols(); ++k) {
      const double res = std::abs(lhs(l, k) - rhs(l, k));
      if (res > r.worst_residual) {
        r.worst_residual = res;
        r.worst_l = static_cast<std::uint64_t>(l);
        r.worst_k = static_cast<std::uint64_t>(k);
      }
      if (l < n && k < n) r.degree_one_residual = std::max(r.degree_one_residual, res);
    }
  r.holds = r.worst_residual <= tol;
  return r;
}

WalshMatrix solve_b_n3(const WalshMatrix& a, double r, Branch branch) {
  if (a.n() != 3) throw Error(ErrorCode::DimensionMismatch, "closed form needs N = 3");
  if (!a.is_real()) throw Error(ErrorCode::InvalidArgument, "closed form needs a real matrix");
  if (!std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "r must be finite");

  const Eigen::Vector3d u1 = a.entries().row(1).real().transpose();
  const Eigen::Vector3d u2 = a.entries().row(2).real().transpose();

  // (Z, r) = M (c, s) with M = [[u1_1, u2_1], [-u2_2, u1_2]]
  const double det = u1(1) * u1(2) + u2(1) * u2(2);
  if (std::abs(det) < 1e-12)
    throw Error(ErrorCode::DegenerateElimination, "elimination pivot vanishes for this A");

  const double alpha = u1(2) * u1(2) + u2(2) * u2(2);
  const double beta = 2.0 * r * (u1(1) * u2(2) - u1(2) * u2(1));
  const double gamma = (u1(1) * u1(1) + u2(1) * u2(1)) * r * r - det * det;
  double disc = beta * beta - 4.0 * alpha * gamma;
  if (disc < 0.0 && disc > -1e-14) disc = 0.0;
  if (disc < 0.0)
    throw Error(ErrorCode::NoRealSolution,
                "r = " + std::to_string(r) + " outside [-" + std::to_string(std::sqrt(alpha)) +
                    ", " + std::to_string(std::sqrt(alpha)) + "]");

  const double root = std::sqrt(disc);
  const double z = (-beta + (branch == Branch::Plus ? root : -root)) / (2.0 * alpha);
  const double c = (u1(2) * z - u2(1) * r) / det;
  const double s = (u2(2) * z + u1(1) * r) / det;

  Eigen::Matrix3d m;
  m.row(0).setConstant(1.0 / std::sqrt(3.0));
  m.row(1) = (c * u1 + s * u2).transpose();
  m.row(2) = (s * u1 - c * u2).transpose();
  m(2, 2) = r;
  return WalshMatrix::validate(m.cast<Complex>(), kGeneratedTol);
}

CompanionFamily companion_family(const WalshMatrix& a, Branch branch) {
  if (a.n() != 3 || !a.is_real())
    throw Error(ErrorCode::InvalidArgument, "companion family needs a real 3x3 matrix");
  const double r_max = std::hypot(a(1, 2).real(), a(2, 2).real());
  return {a, branch, r_max};
}

// ---------------------------------------------------------------------------

MaskedConstraintSystem pairing_constraints(const WalshMatrix& a, bool complex_unknowns) {
  MaskedConstraintSystem sys;
  sys.n = a.n();
  sys.complex_unknowns = complex_unknowns || !a.is_real();
  const int n = a.n();
  const std::size_t per = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
  const std::size_t unknowns = sys.unknown_count();
  auto re = [n](int i, int j) { return static_cast<std::size_t>((i - 1) * n + j); };
  auto im = [n, per](int i, int j) { return per + static_cast<std::size_t>((i - 1) * n + j); };

  for (int l = 1; l < n; ++l)
    for (int k = l; k < n; ++k) {
      // E = sum_j b_lj conj(a_kj) - a_lj conj(b_kj)
      LinearEquation real_part{std::vector<double>(unknowns, 0.0), 0.0};
      LinearEquation imag_part{std::vector<double>(unknowns, 0.0), 0.0};
      for (int j = 0; j < n; ++j) {
        const double pk = a(k, j).real(), qk = a(k, j).imag();
        const double pl = a(l, j).real(), ql = a(l, j).imag();
        real_part.coeffs[re(l, j)] += pk;
        real_part.coeffs[re(k, j)] -= pl;
        if (sys.complex_unknowns) {
          real_part.coeffs[im(l, j)] += qk;
          real_part.coeffs[im(k, j)] -= ql;
          imag_part.coeffs[im(l, j)] += pk;
          imag_part.coeffs[re(l, j)] -= qk;
          imag_part.coeffs[re(k, j)] -= ql;
          imag_part.coeffs[im(k, j)] += pl;
        }
      }
      if (l < k) sys.equations.push_back(std::move(real_part));
      if (sys.complex_unknowns) sys.equations.push_back(std::move(imag_part));
    }
  return sys;
}

MaskedConstraintSystem mask_constraints(const WalshMatrix& a, std::uint64_t mask_seed,
                                        bool complex_unknowns) {
  MaskedConstraintSystem sys = pairing_constraints(a, complex_unknowns);
  sys.mask_seed = mask_seed;
  Rng rng(mask_seed);
  for (LinearEquation& eq : sys.equations) {
    const double magnitude = rng.uniform(0.5, 2.0);
    const double factor = rng.coin() ? -magnitude : magnitude;
    for (double& c : eq.coeffs) c *= factor;
    eq.rhs *= factor;
  }
  return sys;
}

std::string unknown_name(int n, std::size_t index) {
  const std::size_t per = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
  const bool imag = index >= per;
  const std::size_t local = imag ? index - per : index;
  const std::size_t row = local / static_cast<std::size_t>(n) + 1;
  const std::size_t col = local % static_cast<std::size_t>(n);
  return "b_" + std::to_string(row) + "_" + std::to_string(col) + (imag ? "_im" : "");
}

std::string masked_to_json(const MaskedConstraintSystem& m) {
  json list = json::array();
  for (const LinearEquation& eq : m.equations) {
    json coeffs = json::object();
    for (std::size_t i = 0; i < eq.coeffs.size(); ++i)
      if (eq.coeffs[i] != 0.0) coeffs[unknown_name(m.n, i)] = eq.coeffs[i];
    list.push_back({{"coeffs", std::move(coeffs)}, {"rhs", eq.rhs}});
  }
  return list.dump(2) + "\n";
}

MaskedConstraintSystem masked_from_json(const std::string& text, std::optional<int> n) {
  struct Term {
    int row, col;
    bool imag;
    double value;
  };
  std::vector<std::vector<Term>> parsed;
  std::vector<double> rhs;
  int max_index = 0;
  bool any_imag = false;
  try {
    const json doc = json::parse(text);
    if (!doc.is_array()) throw Error(ErrorCode::ParseError, "masked system must be a JSON list");
    for (const json& eq : doc) {
      std::vector<Term> terms;
      for (const auto& [name, value] : eq.at("coeffs").items()) {
        int row = -1, col = -1;
        char tail[8] = {0};
        const int got = std::sscanf(name.c_str(), "b_%d_%d%7s", &row, &col, tail);
        const bool imag = got == 3 && std::string_view(tail) == "_im";
        if (got < 2 || (got == 3 && !imag) || row < 1 || col < 0)
          throw Error(ErrorCode::ParseError, "bad unknown name '" + name + "'");
        max_index = std::max({max_index, row, col});
        any_imag = any_imag || imag;
        terms.push_back({row, col, imag, value.get<double>()});
      }
      parsed.push_back(std::move(terms));
      rhs.push_back(eq.value("rhs", 0.0));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }

  MaskedConstraintSystem sys;
  sys.n = n.value_or(max_index + 1);
  if (sys.n < 2 || max_index >= sys.n)
    throw Error(ErrorCode::BadDimension, "unknown indices do not fit N = " + std::to_string(sys.n));
  sys.complex_unknowns = any_imag;
  const std::size_t per = static_cast<std::size_t>(sys.n) * static_cast<std::size_t>(sys.n - 1);
  for (std::size_t e = 0; e < parsed.size(); ++e) {
    LinearEquation eq{std::vector<double>(sys.unknown_count(), 0.0), rhs[e]};
    for (const Term& t : parsed[e]) {
      const std::size_t idx = static_cast<std::size_t>((t.row - 1) * sys.n + t.col);
      eq.coeffs[t.imag ? per + idx : idx] = t.value;
    }
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

// ---------------------------------------------------------------------------

void MemoryChannel::send(const std::string& name, const std::string& payload) {
  messages_[name] = payload;
}

std::string MemoryChannel::receive(const std::string& name) {
  const auto it = messages_.find(name);
  if (it == messages_.end()) throw Error(ErrorCode::ParseError, "no message '" + name + "'");
  return it->second;
}

DirectoryChannel::DirectoryChannel(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void DirectoryChannel::send(const std::string& name, const std::string& payload) {
  write_text_file(dir_ / (name + ".csv"), payload);
}

std::string DirectoryChannel::receive(const std::string& name) {
  return read_text_file(dir_ / (name + ".csv"));
}

ExchangeTranscript run_exchange(const WalshMatrix& a, const WalshMatrix& b, const Signal& s,
                                MessageChannel* channel) {
  if (a.n() != b.n() || s.base() != a.n())
    throw Error(ErrorCode::BaseMismatch, "matrices and signal must share N");
  MemoryChannel local;
  MessageChannel& ch = channel ? *channel : local;
  const bool violated = !coma_check(a, b, kPairingTol).holds;

  // Alice
  ch.send("w1", coeffs_to_csv(dwt_fast(a, s), kExactPrecision));
  // Bob
  const CoefficientVector w1 = coeffs_from_csv(ch.receive("w1"));
  ch.send("w2", signal_to_csv(idwt(b, w1), kExactPrecision));
  // Alice
  const Signal w2 = signal_from_csv(ch.receive("w2"));
  ch.send("w3", coeffs_to_csv(dwt_fast(a, w2), kExactPrecision));
  // Bob
  const CoefficientVector w3 = coeffs_from_csv(ch.receive("w3"));
  Signal recovered = idwt(b, w3);

  double max_error = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j)
    max_error = std::max(max_error, std::abs(recovered[j] - s[j]));
  return {w1, w2, w3, std::move(recovered), max_error, violated};
}

std::string transcript_to_json(const ExchangeTranscript& t) {
  auto values = [](const std::vector<Complex>& v) {
    bool real = std::all_of(v.begin(), v.end(), [](const Complex& c) { return c.imag() == 0.0; });
    json out = json::array();
    for (const Complex& c : v) {
      if (real)
        out.push_back(c.real());
      else
        out.push_back(json::array({c.real(), c.imag()}));
    }
    return out;
  };
  json doc;
  doc["n"] = t.w1.base();
  doc["q"] = t.w1.q();
  doc["w1"] = values(t.w1.coeffs());
  doc["w2"] = values(t.w2.values());
  doc["w3"] = values(t.w3.coeffs());
  doc["recovered"] = values(t.recovered.values());
  doc["max_error"] = t.max_error;
  doc["pairing_violated"] = t.pairing_violated;
  return doc.dump(2) + "\n";
}

}  // namespace gwalsh
