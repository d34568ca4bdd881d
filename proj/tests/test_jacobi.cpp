#include <cmath>
#include <numbers>

#include "doctest.h"
#include "neckcut/errors.hpp"
#include "neckcut/jacobi.hpp"
#include "neckcut/mesh_builders.hpp"

using namespace neckcut;
using namespace neckcut::jacobi;
using std::numbers::pi;

namespace {

double l2_norm(const JacobiData& d) {
  double s = 0;
  for (std::size_t i = 0; i < d.mass.size(); ++i) s += d.mass[i] * d.eigenfunction[i] * d.eigenfunction[i];
  return std::sqrt(s);
}

void check_sign(const JacobiData& d, const std::vector<char>& fixed = {}) {
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < d.eigenfunction.size(); ++i) {
    if (!fixed.empty() && fixed[i]) continue;
    lo = std::min(lo, d.eigenfunction[i]);
    hi = std::max(hi, d.eigenfunction[i]);
  }
  CHECK(lo * hi > 0.0);
}

// Band 0 ≤ φ ≤ span of the Clifford torus with Dirichlet ends. Its metric width is span/√2,
// so the lowest eigenvalue of −Δ − 4 is 2π²/span² − 4.
JacobiData band_lowest(int n, double span, std::vector<char>* fixed_out = nullptr, int max_iterations = 2000) {
  const auto m = mesh::parallel_torus_band(pi / 4, n, n / 2, span);
  JacobiOptions opt;
  opt.max_iterations = max_iterations;
  opt.dirichlet.assign(m.vertex_count(), 0);
  for (std::size_t i = 0; i < m.vertex_count(); ++i)
    if (m.uv[i][1] == 0.0 || m.uv[i][1] == span) opt.dirichlet[i] = 1;
  if (fixed_out) *fixed_out = opt.dirichlet;
  return jacobi_lowest(m, opt);
}

}  // namespace

TEST_CASE("stiffness annihilates constants and is symmetric") {
  const auto m = mesh::clifford_torus_grid(16);
  const auto k = stiffness(m);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k.rows());
  CHECK((k * ones).norm() <= 1e-12);
  CHECK((Eigen::MatrixXd(k) - Eigen::MatrixXd(k).transpose()).norm() <= 1e-12);
  double total = 0;
  for (double v : lumped_mass(m)) total += v;
  CHECK(total == doctest::Approx(mesh::total_area(m)).epsilon(1e-13));
}

TEST_CASE("Clifford torus: lowest eigenvalue -4 with constant eigenfunction") {
  const auto d = jacobi_lowest(mesh::clifford_torus_grid(64));
  CHECK(d.eigenvalue == doctest::Approx(-4.0).epsilon(0.02));
  CHECK(std::abs(d.eigenvalue + 4) <= 1e-9);
  CHECK(l2_norm(d) == doctest::Approx(1.0).epsilon(1e-12));
  check_sign(d);
  const auto [lo, hi] = std::minmax_element(d.eigenfunction.begin(), d.eigenfunction.end());
  CHECK(*hi - *lo <= 1e-6 * *hi);
  CHECK(d.shift < -4.0);
}

TEST_CASE("round sphere with zero potential") {
  const auto s = mesh::icosphere(3);
  JacobiOptions opt;
  opt.potential.assign(s.vertex_count(), 0.0);
  const auto d = jacobi_lowest(s, opt);
  CHECK(std::abs(d.eigenvalue) <= 1e-9);
  check_sign(d);
  CHECK(l2_norm(d) == doctest::Approx(1.0).epsilon(1e-12));
  // With its own potential |A|² = 2 the constant has eigenvalue −2.
  CHECK(jacobi_lowest(s).eigenvalue == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("Dirichlet band: second-order convergence") {
  const double exact = 2 * pi * pi / (pi * pi) - 4;
  std::vector<char> fixed;
  const auto coarse = band_lowest(64, pi, &fixed);
  check_sign(coarse, fixed);
  const double e1 = std::abs(band_lowest(64, pi).eigenvalue - exact);
  const double e2 = std::abs(band_lowest(128, pi).eigenvalue - exact);
  CHECK(e1 <= 0.02 * std::abs(exact));
  CHECK(std::log2(e1 / e2) >= 1.8);
}

TEST_CASE("solver failure is reported") {
  CHECK_THROWS_AS(band_lowest(16, pi, nullptr, 1), SolverFailure);
}
