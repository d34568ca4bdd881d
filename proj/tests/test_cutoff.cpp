#include <cmath>
#include <numbers>

#include "doctest.h"
#include "neckcut/cutoff.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/mesh_builders.hpp"

using namespace neckcut;
using namespace neckcut::cutoff;
using std::numbers::pi;

namespace {

// Closed-form annulus integral ∫_{t²}^{t} (1/(log t)²)(1/ρ²)·2πρ dρ.
double flat_energy(double t) { return 2 * pi / (-std::log(t)); }

struct TorusBall {
  mesh::MeshSurface m;
  int centre;
};

TorusBall refined_clifford(double core) {
  mesh::PatchLayout layout;
  layout.holes.push_back({0, 1, mesh::metric_circle(pi / 4, core), true});
  const auto pm = mesh::patch_torus_layout(layout);
  return {mesh::realize(mesh::parallel_torus(pi / 4), pm.uv, pm.triangles), pm.centres[0]};
}

}  // namespace

TEST_CASE("log cutoff profile") {
  const double t = 0.1;
  CHECK(log_cutoff(t, 0.5) == 1.0);
  CHECK(log_cutoff(t, t) == 1.0);
  CHECK(log_cutoff(t, t * t) == 0.0);
  CHECK(log_cutoff(t, 1e-9) == 0.0);
  CHECK(log_cutoff(t, std::pow(t, 1.5)) == doctest::Approx(0.5).epsilon(1e-14));
  // Continuity at both interfaces.
  CHECK(log_cutoff(t, t * (1 - 1e-12)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(log_cutoff(t, t * t * (1 + 1e-12)) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("cutoff field values follow distance") {
  const auto d = mesh::flat_polar_disk(64, 1e-4, 1.3);
  const auto c = build_cutoff(d, 0, 0.1);
  for (std::size_t i = 0; i < d.vertex_count(); ++i) {
    CHECK(c.values[i] >= 0.0);
    CHECK(c.values[i] <= 1.0);
    if (c.distance[i] >= 0.1) CHECK(c.values[i] == 1.0);
    if (c.distance[i] <= 0.01) CHECK(c.values[i] == 0.0);
  }
  CHECK_THROWS_AS(build_cutoff(d, 0, 1.0), DomainError);
  CHECK_THROWS_AS(build_cutoff(d, 0, 0.0), DomainError);
}

TEST_CASE("flat disk energy matches the annulus integral") {
  for (double t : {1e-2, 1e-3}) {
    const auto d = mesh::flat_polar_disk(4096, 0.1 * t * t, 1.3);
    const double e = cutoff_energy(build_cutoff(d, 0, t));
    CHECK(std::abs(e / flat_energy(t) - 1) <= 1e-6);
  }
}

TEST_CASE("energy times -log t tends to 2 pi on the flat disk") {
  const auto d = mesh::flat_polar_disk(1024, 1e-9, 1.3);
  for (double t : {1e-2, 1e-3, 1e-4}) {
    const double e = cutoff_energy(build_cutoff(d, 0, t));
    CHECK(e * -std::log(t) == doctest::Approx(2 * pi).epsilon(1e-5));
  }
}

TEST_CASE("Clifford torus energy is bounded by the perimeter constant") {
  for (double t : {0.02, 0.05, 0.1}) {
    const auto ball = refined_clifford(0.1 * t * t);
    const auto c = build_cutoff(ball.m, ball.centre, t);
    const double e = cutoff_energy(c);
    const auto fit = fit_perimeter_constant(c);
    // The ball is nearly Euclidean, so the fitted constant sits close to 2π.
    CHECK(fit.d_fit == doctest::Approx(2 * pi).epsilon(0.01));
    CHECK(e <= 2 * fit.d_fit / -std::log(t));
    CHECK(e * -std::log(t) <= 1.01 * 2 * pi);
  }
}

TEST_CASE("balls that wrap around the torus are rejected") {
  // The φ-circles of T_0.1 have length 2π·sin 0.1 ≈ 0.63.
  const auto m = mesh::parallel_torus_grid(0.1, 64, 16);
  CHECK_THROWS_AS(build_cutoff(m, 0, 0.5), RadiusTooLarge);
  CHECK_NOTHROW(build_cutoff(m, 0, 0.2));
  const auto band = mesh::catenoid_patch(1.0, 0.2, 32, 8);
  CHECK_THROWS_AS(build_cutoff(band, 0, 0.1), RadiusTooLarge);
}

TEST_CASE("punctured cutoff") {
  const double t = 0.05;
  mesh::PatchLayout layout;
  layout.holes.push_back({0, 1, mesh::metric_circle(pi / 4, t * t), false});
  const auto pm = mesh::patch_torus_layout(layout);
  const auto m = mesh::realize(mesh::parallel_torus(pi / 4), pm.uv, pm.triangles);
  const auto c = build_cutoff_punctured(m, pm.hole_rings, t * t, t);
  for (int v : pm.hole_rings[0]) CHECK(c.values[v] == 0.0);
  // Same energy as the filled disk up to mesh error: the removed disk carries none.
  const auto ball = refined_clifford(t * t);
  const double filled = cutoff_energy(build_cutoff(ball.m, ball.centre, t));
  CHECK(cutoff_energy(c) == doctest::Approx(filled).epsilon(1e-3));
  CHECK_THROWS_AS(build_cutoff_punctured(m, pm.hole_rings, 0.1, t), DomainError);
}
