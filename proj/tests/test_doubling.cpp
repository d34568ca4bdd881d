#include <cmath>
#include <numbers>

#include "doctest.h"
#include "neckcut/doubling.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/mesh.hpp"
#include "neckcut/mesh_builders.hpp"
#include "neckcut/s3.hpp"
#include "neckcut/tube_family.hpp"

using namespace neckcut;
using namespace neckcut::s3;
using std::numbers::pi;

namespace {

// Area of the necks slice from the flat geometry of Γ_t and of the tube: the torus has area
// element √(t(1−t))·dθdφ, the tube sin ε·cos ε·dβdψ.
double necks_oracle(int m, double t, double eps) {
  const double se = std::sin(eps), ce = std::cos(eps);
  const int n = 200000;
  double hole = 0.0, tube = 0.0;
  std::array<double, 2> prev{};
  for (int k = 0; k <= n; ++k) {
    const double psi = 2 * pi * k / n;
    const double c = std::cos(psi), s = std::sin(psi);
    const double be = std::acos(std::sqrt((t - se * se * c * c) / (ce * ce)));
    const double bs = std::asin(std::sqrt((t - se * se * s * s) / (ce * ce)));
    const std::array<double, 2> p{std::atan2(se * c, ce * std::cos(be)), std::atan2(se * s, ce * std::sin(be))};
    if (k > 0) {
      hole += 0.5 * (prev[0] * p[1] - prev[1] * p[0]);
      tube += (be - bs) * 2 * pi / n;
    }
    prev = p;
  }
  return 2 * (cmc_area(t) - m * m * std::sqrt(t * (1 - t)) * std::abs(hole)) + m * m * se * ce * tube;
}

}  // namespace

TEST_CASE("neck schedule opens and closes") {
  NeckSchedule s;
  const double T = s.closing();
  CHECK(T == doctest::Approx(0.45));
  CHECK(s.eta(0.0) == 0.0);
  for (double t : {T, T + 1e-9, 0.48, 0.5}) CHECK(s.eta(t) == 0.0);
  for (double t : {1e-6, 0.1, T / 2, T - 1e-6}) {
    CHECK(s.eta(t) > 0.0);
    CHECK(s.eta(t) <= s.epsilon);
  }
  CHECK(s.eta(T / 2) == doctest::Approx(s.epsilon));
  NeckSchedule bad;
  bad.delta = 0.6;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("end slices are degenerate and the closing slice is two tori") {
  NeckSchedule s;
  for (int m : {2, 3}) {
    const auto a = assemble_slice(m, s, 0.0);
    CHECK(a.area == 0.0);
    CHECK_FALSE(a.regular);
    const auto b = assemble_slice(m, s, 0.5);
    CHECK(b.area == 0.0);
    const auto c = assemble_slice(m, s, s.closing());
    CHECK(c.area == doctest::Approx(2 * cmc_area(0.45)).epsilon(1e-6));
    CHECK(c.area == doctest::Approx(8 * pi * pi * std::sqrt(0.45 * 0.55)).epsilon(1e-6));
    CHECK(c.area < 4 * pi * pi);
    CHECK_FALSE(c.regular);
  }
}

TEST_CASE("necks slice area against the flat integrals") {
  NeckSchedule s;
  for (int m : {2, 3})
    for (double t : {0.02, 0.15, 0.3, 0.44}) {
      const auto sl = assemble_slice(m, s, t);
      CHECK(sl.phase == "necks");
      CHECK(sl.area == doctest::Approx(necks_oracle(m, t, s.eta(t))).epsilon(2e-6));
    }
}

TEST_CASE("regular slices have genus m^2 + 1 and are G_m invariant") {
  NeckSchedule s;
  for (int m : {2, 3})
    for (double t : {0.1, 0.3, 0.46, 0.48}) {
      const auto sl = assemble_slice(m, s, t, true);
      CHECK(sl.regular);
      CHECK(mesh::euler_characteristic(sl.mesh) == 2 - 2 * (m * m + 1));
      CHECK(mesh::boundary_edges(sl.mesh).empty());
      const auto eq = check_equivariance(sl.mesh, m);
      CHECK(eq.elements == 2 * m * m);
      CHECK(eq.ok());
      CHECK(mesh::total_area(sl.mesh) == doctest::Approx(sl.area).epsilon(1e-9));
    }
}

TEST_CASE("equivariance check notices a broken slice") {
  NeckSchedule s;
  auto sl = assemble_slice(2, s, 0.2, true);
  sl.mesh.vertices[0] *= 1.0;
  sl.mesh.vertices[0][0] += 1e-6;
  CHECK_FALSE(check_equivariance(sl.mesh, 2).ok());
}

TEST_CASE("opening slices match the two-sided tube family") {
  NeckSchedule s;
  const double T = s.closing();
  fermi::TubeFamilyConfig cfg;
  cfg.patches = 2;
  cfg.punctures = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  cfg.h = std::acos(std::sqrt(T)) - pi / 4;
  cfg.t_grid = {0.15, 0.3};
  const auto fam = fermi::two_sided_tube_family(cfg);
  const auto a = assemble_slice(2, s, T + s.delta / 4);
  const auto b = assemble_slice(2, s, T + s.delta / 2);
  CHECK(a.area == doctest::Approx(fam.rows[0].area).epsilon(1e-5));
  CHECK(b.area == doctest::Approx(fam.rows[1].area).epsilon(1e-5));
  // The opening starts from the two tori.
  CHECK(assemble_slice(2, s, T + 1e-7).area == doctest::Approx(2 * cmc_area(T)).epsilon(1e-6));
}

TEST_CASE("retraction collapses the area continuously") {
  NeckSchedule s;
  const double start = s.closing() + s.delta / 2;
  const double opened = assemble_slice(2, s, start).area;
  double prev = assemble_slice(2, s, start + 1e-9).area;
  CHECK(prev == doctest::Approx(opened).epsilon(1e-6));
  for (double u : {0.2, 0.5, 0.8, 0.99}) {
    const double a = assemble_slice(2, s, start + u * s.delta / 2).area;
    CHECK(a < prev);
    prev = a;
  }
  CHECK(prev < 0.03 * opened);
}

TEST_CASE("doubled sweepout stays below 4π^2") {
  NeckSchedule s;
  for (int m : {2, 3}) {
    const auto rep = assemble_doubled_sweepout(m, s, default_doubling_t_grid(s));
    CHECK(rep.summary.budget == doctest::Approx(4 * pi * pi).epsilon(1e-15));
    CHECK(rep.summary.sup_area < 4 * pi * pi);
    CHECK(rep.summary.margin > 0.0);
    CHECK(rep.summary.pass);
    CHECK(rep.metric("equivariance_unmatched") == 0.0);
    CHECK(rep.metric("euler_necks") == rep.metric("euler_expected"));
    CHECK(rep.metric("euler_opening") == rep.metric("euler_expected"));
    CHECK(rep.metric("euler_retracting") == rep.metric("euler_expected"));
    CHECK(rep.metric("non_regular_t") == doctest::Approx(0.45));
    CHECK(rep.rows.front().area == 0.0);
    CHECK(rep.rows.back().area == 0.0);
    // Refinement: neighbouring rows away from t = 0 differ by little.
    for (std::size_t k = 2; k + 1 < rep.rows.size(); ++k)
      CHECK(std::abs(rep.rows[k + 1].area - rep.rows[k].area) < 8.0);
  }
}

TEST_CASE("oversized necks are rejected") {
  NeckSchedule s;
  // Near closing the necks cost 2πm²u² against the 8π²u² the tori gain, u = 1/2 − t, so
  // wide necks break the budget once m² > 4π.
  s.epsilon = 0.2;
  s.delta = 0.01;
  CHECK_THROWS_AS(assemble_doubled_sweepout(4, s, {0.44, 0.45}), BudgetViolated);
  s.epsilon = 0.7;
  CHECK_THROWS_AS(assemble_slice(3, s, 0.05), RadiusTooLarge);
}
