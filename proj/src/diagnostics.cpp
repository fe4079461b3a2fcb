#include "gwalsh/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "gwalsh/basis.hpp"
#include "gwalsh/protocol.hpp"
#include "gwalsh/rng.hpp"
#include "gwalsh/series.hpp"

namespace gwalsh {

double gram_defect(const WalshMatrix& a, int q) {
  const std::uint64_t cells = checked_pow(a.n(), q);
  const auto size = static_cast<Eigen::Index>(cells);
  ComplexMatrix w(size, size);
  for (std::uint64_t n = 0; n < cells; ++n) {
    const std::vector<Complex> row = walsh_on_grid(a, n, q);
    for (std::uint64_t j = 0; j < cells; ++j)
      w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = row[j];
  }
  const ComplexMatrix gram = w * w.adjoint() / static_cast<double>(cells);
  return (gram - ComplexMatrix::Identity(size, size)).cwiseAbs().maxCoeff();
}

KernelCheckReport kernel_check(const WalshMatrix& a, int q, std::size_t pairs,
                               std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t cells = checked_pow(a.n(), q);
  const double width = 1.0 / static_cast<double>(cells);
  KernelCheckReport r;
  r.pairs = pairs;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double x = rng.uniform01();
    double t;
    if (p % 2 == 1) {
      const CellIndex c = cell_of(x, a.n(), q);
      t = std::min((static_cast<double>(c.j) + rng.uniform01()) * width,
                   std::nextafter(1.0, 0.0));
    } else {
      t = rng.uniform01();
    }
    const bool same = cell_of(x, a.n(), q).j == cell_of(t, a.n(), q).j;
    if (same) ++r.same_cell_pairs;
    const double expected = same ? static_cast<double>(cells) : 0.0;
    r.max_deviation =
        std::max(r.max_deviation, std::abs(dirichlet_kernel(a, q, x, t) - expected));
  }
  return r;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json doc;
  nlohmann::json list = nlohmann::json::array();
  for (const CheckResult& c : checks)
    list.push_back({{"name", c.name}, {"value", c.value}, {"passed", c.passed}});
  doc["checks"] = std::move(list);
  doc["passed"] = passed();
  return doc.dump(2) + "\n";
}

VerifyReport verify_matrices(const WalshMatrix& a, const std::optional<WalshMatrix>& b, int q,
                             double tol, std::uint64_t seed) {
  VerifyReport report;
  auto add = [&](std::string name, double value) {
    report.checks.push_back({std::move(name), value, value <= tol});
  };

  add("unitarity_defect", a.unitarity_defect());
  add("gram_defect", gram_defect(a, q));
  add("dirichlet_max_deviation", kernel_check(a, q, 200, seed).max_deviation);

  Rng rng(seed);
  std::vector<double> values(checked_pow(a.n(), q + 1));
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  const Signal s(a.n(), q + 1, values);
  const MartingaleReport m = martingale_check(a, s, q);
  add("exp_residual", m.exp_residual);
  add("tower_residual", m.tower_residual);

  if (b) {
    add("unitarity_defect_b", b->unitarity_defect());
    add("coma_residual", coma_check(a, *b, tol).worst_residual);
    add("comm_residual", comm_check(a, *b, q, tol).worst_residual);
  }
  return report;
}

}  // namespace gwalsh
