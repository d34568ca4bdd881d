#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "neckcut/errors.hpp"
#include "neckcut/geodesic.hpp"
#include "neckcut/mesh_builders.hpp"

using namespace neckcut;
using namespace neckcut::mesh;
using std::numbers::pi;

TEST_CASE("built-in meshes satisfy the mesh invariants") {
  CHECK_NOTHROW(clifford_torus_grid(16).validate());
  CHECK_NOTHROW(parallel_torus_grid(0.4, 12, 20).validate());
  CHECK_NOTHROW(catenoid_patch(1.0, 1.0, 32, 16).validate());
  CHECK_NOTHROW(flat_polar_disk(64, 1e-3, 1.3).validate());
  CHECK_NOTHROW(icosphere(2).validate());
  auto bad = clifford_torus_grid(8);
  bad.vertices[3] *= 1.001;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("Clifford torus area with quadratic triangles") {
  const auto m = clifford_torus_grid(64);
  CHECK(m.vertex_count() == 4096);
  const double exact = 2 * pi * pi;
  CHECK(std::abs(total_area(m) / exact - 1) <= 1e-4);
  auto flat = m;
  flat.edge_mid.clear();
  // Chord triangles are only second order and visibly short at this size.
  CHECK(std::abs(total_area(flat) / exact - 1) > 1e-4);
  CHECK(std::abs(total_area(clifford_torus_grid(32)) / exact - 1) > std::abs(total_area(m) / exact - 1));
}

TEST_CASE("product torus and sphere areas") {
  for (double a : {0.3, 0.7, 1.1}) {
    const double exact = 4 * pi * pi * std::cos(a) * std::sin(a);
    CHECK(std::abs(total_area(parallel_torus_grid(a, 64, 64)) / exact - 1) <= 1e-4);
  }
  CHECK(std::abs(total_area(icosphere(4)) / (4 * pi) - 1) <= 1e-5);
}

TEST_CASE("Euler characteristics") {
  CHECK(euler_characteristic(clifford_torus_grid(8)) == 0);
  CHECK(euler_characteristic(icosphere(2)) == 2);
  CHECK(euler_characteristic(catenoid_patch(1, 1, 16, 4)) == 0);
  CHECK(euler_characteristic(flat_polar_disk(16, 0.1, 1.5)) == 1);
  PatchLayout layout;
  layout.holes.push_back({0, 1, metric_circle(pi / 4, 0.01), false});
  layout.holes.push_back({1, 0, metric_circle(pi / 4, 0.01), false});
  const auto pm = patch_torus_layout(layout);
  const auto m = realize(parallel_torus(pi / 4), pm.uv, pm.triangles);
  CHECK_NOTHROW(m.validate());
  CHECK(euler_characteristic(m) == -2);
  CHECK(boundary_edges(m).size() == 2 * 64);
  // Removing two metric disks of radius ρ.
  CHECK(total_area(m) == doctest::Approx(2 * pi * pi - 2 * pi * 1e-4).epsilon(1e-6));
}

TEST_CASE("hole rings sit on their curve and use the shared ray angles") {
  PatchLayout layout;
  layout.patches = 2;
  layout.segments = 8;
  layout.holes.push_back({1, 1, metric_circle(0.6, 0.05), true});
  const auto pm = patch_torus_layout(layout);
  REQUIRE(pm.hole_rings[0].size() == 32);
  CHECK(pm.ring_psi.size() == 32);
  const UV c = pm.uv[pm.centres[0]];
  for (std::size_t j = 0; j < 32; ++j) {
    const UV p = pm.uv[pm.hole_rings[0][j]];
    const double dt = (p[0] - c[0]) * std::cos(0.6), dp = (p[1] - c[1]) * std::sin(0.6);
    CHECK(std::hypot(dt, dp) == doctest::Approx(0.05).epsilon(1e-12));
  }
  const auto m = realize(parallel_torus(0.6), pm.uv, pm.triangles);
  CHECK(euler_characteristic(m) == 0);
}

TEST_CASE("normal push: parallel tori, translations, chart overflow") {
  const auto m = clifford_torus_grid(64);
  for (double s : {0.01, 0.1, 0.3}) {
    const auto p = push_along_normals(m, std::vector<double>(m.vertex_count(), s));
    CHECK(std::abs(total_area(p) / (2 * pi * pi * std::cos(2 * s)) - 1) <= 1e-6);
    CHECK_NOTHROW(p.validate());
  }
  CHECK_THROWS_AS(push_along_normals(m, std::vector<double>(m.vertex_count(), pi / 4)), ChartOverflow);
  const auto d = flat_polar_disk(64, 1e-2, 1.3);
  CHECK(total_area(push_along_normals(d, std::vector<double>(d.vertex_count(), 0.7))) ==
        doctest::Approx(total_area(d)).epsilon(1e-14));
  CHECK(total_area(push_along_normals(m, std::vector<double>(m.vertex_count(), 0.0))) == total_area(m));
}

TEST_CASE("finite-difference curvature against analytic values") {
  auto sphere = icosphere(3);
  finite_difference_curvature(sphere);
  for (double v : sphere.a_norm2) CHECK(v == doctest::Approx(2.0).epsilon(0.05));
  auto torus = clifford_torus_grid(32);
  finite_difference_curvature(torus);
  for (double v : torus.a_norm2) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(torus.ric_nn[0] == 2.0);
  // Catenoid band away from the rim: error falls under refinement.
  double prev = 1e9;
  for (int n : {32, 64, 128}) {
    auto c = catenoid_patch(1.0, 1.0, n, n / 2);
    const auto s = catenoid_surface(1.0);
    finite_difference_curvature(c);
    double err = 0;
    for (std::size_t i = 0; i < c.vertex_count(); ++i)
      if (std::abs(c.uv[i][1]) < 0.9) err = std::max(err, std::abs(c.a_norm2[i] - s.shape(c.uv[i][0], c.uv[i][1]).squaredNorm()));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("analytic shape operators match the normal derivative") {
  // A(X, X) = −⟨dN X, X⟩ from a central difference along each parameter direction.
  const auto check = [](const ParamSurface& s, double u, double v) {
    const double e = 1e-5;
    for (int dir = 0; dir < 2; ++dir) {
      const double du = dir == 0 ? e : 0, dv = dir == 1 ? e : 0;
      const Vec4 x = (s.point(u + du, v + dv) - s.point(u - du, v - dv)) / (2 * e);
      const Vec4 dn = (s.normal(u + du, v + dv) - s.normal(u - du, v - dv)) / (2 * e);
      CHECK(x.dot(s.shape(u, v) * x) == doctest::Approx(-dn.dot(x)).epsilon(1e-6));
    }
  };
  check(parallel_torus(0.4), 0.3, 1.2);
  check(parallel_torus(pi / 4), 2.0, -0.5);
  check(catenoid_surface(0.7), 0.9, 0.4);
}

TEST_CASE("mesh text format round trip") {
  const auto m = clifford_torus_grid(6);
  std::stringstream ss;
  write_mesh(ss, m);
  const auto r = read_mesh(ss);
  CHECK(r.ambient == Ambient::round_s3);
  CHECK(r.vertex_count() == m.vertex_count());
  CHECK(r.triangles == m.triangles);
  for (std::size_t i = 0; i < m.vertex_count(); ++i) CHECK((r.vertices[i] - m.vertices[i]).norm() == 0.0);
  std::stringstream bad("v 1 2 3\n");
  CHECK_THROWS_AS(read_mesh(bad), DomainError);
}

TEST_CASE("merge welds shared vertices") {
  const auto a = catenoid_patch(1.0, 0.5, 8, 2);
  const auto m = merge({&a, &a});
  CHECK(m.vertex_count() == a.vertex_count());
  CHECK(m.triangle_count() == 2 * a.triangle_count());
}

TEST_CASE("geodesic distance") {
  // Radial edges of the polar disk are straight rays from the centre.
  const auto d = flat_polar_disk(128, 1e-3, 1.2);
  const auto dist = geodesic_distance(d, {{0, 0.0}});
  for (std::size_t i = 0; i < d.vertex_count(); ++i) CHECK(dist[i] == doctest::Approx(d.vertices[i].norm()).epsilon(1e-12));
  // Flat torus metric (dθ² + dφ²)/2: distances of at least ten edges within 2%.
  const int n = 128;
  const auto t = clifford_torus_grid(n);
  const auto g = geodesic_distance(t, {{0, 0.0}});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(10, n / 2 - 1);
  for (int k = 0; k < 50; ++k) {
    const int i = pick(rng), j = pick(rng);
    const double exact = std::hypot(i, j) * 2 * pi / n / std::sqrt(2.0);
    CHECK(std::abs(g[i * n + j] / exact - 1) <= 0.02);
  }
  CHECK_THROWS_AS(geodesic_distance(t, {{-1, 0.0}}), DomainError);
}
