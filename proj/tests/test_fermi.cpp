#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "neckcut/errors.hpp"
#include "neckcut/fermi.hpp"
#include "neckcut/jacobi.hpp"
#include "neckcut/mesh_builders.hpp"
#include "neckcut/numeric.hpp"

using namespace neckcut;
using namespace neckcut::fermi;
using std::numbers::pi;

namespace {

// Brute-force oracle: direct determinant and inverse of g + εX + ε²Y.
struct Direct {
  double det;
  Mat2 inv;
};
Direct direct(const Mat2& g, const Mat2& x, const Mat2& y, double eps) {
  const Mat2 m = g + eps * x + eps * eps * y;
  return {m.determinant(), m.inverse()};
}

Mat2 random_symmetric(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Mat2 m;
  m(0, 0) = u(rng);
  m(1, 1) = u(rng);
  m(0, 1) = m(1, 0) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("identity metric expansion") {
  const auto e = expand_det_inverse(Mat2::Identity(), Mat2::Zero(), Mat2::Zero());
  CHECK(e.det0 == 1.0);
  CHECK(e.c1 == 0.0);
  CHECK(e.c2 == 0.0);
  CHECK((e.inverse[0] - Mat2::Identity()).norm() == 0.0);
  CHECK(e.inverse[1].norm() == 0.0);
  CHECK(e.inverse[2].norm() == 0.0);
  Mat2 bad;
  bad << 1, 0, 0, -1;
  CHECK_THROWS_AS(expand_det_inverse(bad, Mat2::Zero(), Mat2::Zero()), NotPositiveDefinite);
}

TEST_CASE("determinant and inverse expansions are third-order accurate") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Mat2 g = random_symmetric(rng);
    g += 2.5 * Mat2::Identity();
    const Mat2 x = random_symmetric(rng), y = random_symmetric(rng);
    const auto e = expand_det_inverse(g, x, y);
    double err[2], ierr[2];
    const double eps[2] = {1e-3, 5e-4};
    for (int k = 0; k < 2; ++k) {
      const auto d = direct(g, x, y, eps[k]);
      err[k] = std::abs(d.det - e.det0 * (1 + e.c1 * eps[k] + e.c2 * eps[k] * eps[k]));
      ierr[k] = (d.inv - (e.inverse[0] + eps[k] * e.inverse[1] + eps[k] * eps[k] * e.inverse[2])).norm();
      CHECK(ierr[k] <= 50 * std::pow(eps[k], 3));
      CHECK(err[k] <= 50 * std::pow(eps[k], 3));
    }
    // Halving ε divides the inverse remainder by about eight.
    CHECK(ierr[0] / ierr[1] == doctest::Approx(8.0).epsilon(0.05));
  }
}

TEST_CASE("Clifford torus jet") {
  const auto m = mesh::clifford_torus_grid(64);
  const auto jet = metric_jet(m);
  CHECK(jet.max_abs_mean_curvature <= 1e-12);
  const auto ex = det_and_inverse_expansion(jet, 1e-3);
  CHECK(ex.trace_a_residual <= 1e-12);
  CHECK(ex.tr2_residual <= 1e-12);
  CHECK(ex.trace_t_residual <= 1e-12);
  CHECK(ex.mean_c1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ex.mean_c2 == doctest::Approx(-4.0).epsilon(0.01));
  // Edge-sampled curvature is second order: the gap shrinks about fourfold.
  const auto fine = det_and_inverse_expansion(metric_jet(mesh::clifford_torus_grid(128)), 1e-3);
  CHECK(std::abs(fine.mean_c2 + 4) < 0.3 * std::abs(ex.mean_c2 + 4));
  CHECK_THROWS_AS(det_and_inverse_expansion(jet, 1e3), NotPositiveDefinite);
}

TEST_CASE("flat and catenoid jets") {
  const auto disk = mesh::flat_polar_disk(32, 0.01, 1.5);
  const auto jet = metric_jet(disk);
  for (const auto& j : jet.triangles) {
    CHECK(j.A.norm() == 0.0);
    CHECK(j.T.norm() == 0.0);
  }
  const auto cat = mesh::catenoid_patch(1.0, 1.0, 128, 64);
  CHECK(metric_jet(cat).max_abs_mean_curvature <= 1e-3);
  // Finite-difference curvature is used when the mesh has none.
  auto bare = mesh::clifford_torus_grid(32);
  bare.shape.clear();
  CHECK(metric_jet(bare).max_abs_mean_curvature <= 1e-9);
}

TEST_CASE("exact graph area") {
  const auto m = mesh::clifford_torus_grid(64);
  const std::vector<double> one(m.vertex_count(), 1.0), zero(m.vertex_count(), 0.0);
  for (double s : {0.05, 0.2}) {
    NormalGraphField g{&m, one, {}, s};
    CHECK(std::abs(graph_area_exact(g) / (2 * pi * pi * std::cos(2 * s)) - 1) <= 1e-6);
  }
  CHECK(graph_area_exact({&m, zero, {}, 0.3}) == mesh::total_area(m));
  const auto disk = mesh::flat_polar_disk(64, 0.01, 1.3);
  CHECK(graph_area_exact({&disk, std::vector<double>(disk.vertex_count(), 1.0), {}, 0.4}) ==
        doctest::Approx(mesh::total_area(disk)).epsilon(1e-14));
  CHECK_THROWS_AS(graph_area_exact({&m, one, {}, 1.0}), ChartOverflow);
  CHECK_THROWS_AS(graph_area_exact({&m, {1.0}, {}, 0.1}), DomainError);
}

TEST_CASE("two-term estimate on the Clifford torus") {
  const auto m = mesh::clifford_torus_grid(64);
  const std::vector<double> one(m.vertex_count(), 1.0);
  const double base = mesh::total_area(m);
  const auto est = graph_area_estimate({&m, one, {}, 0.01});
  CHECK(est.q == doctest::Approx(-4 * base).epsilon(1e-12));
  CHECK(est.q == doctest::Approx(-8 * pi * pi).epsilon(1e-6));
  CHECK(est.estimate == doctest::Approx(base * (1 - 2 * 0.01 * 0.01)).epsilon(1e-14));
  const auto zero = graph_area_estimate({&m, std::vector<double>(m.vertex_count(), 0.0), {}, 0.1});
  CHECK(zero.estimate == zero.base_area);

  // |exact − estimate| against h on a log-log scale; the odd term vanishes by symmetry.
  std::vector<double> lh, lr;
  for (double h : {1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3}) {
    NormalGraphField g{&m, one, {}, h};
    const double r = std::abs(graph_area_exact(g) - graph_area_estimate(g).estimate);
    lh.push_back(std::log(h));
    lr.push_back(std::log(r));
  }
  CHECK(fit_line(lh, lr).slope >= 3.0);
}

TEST_CASE("second variation of random smooth fields") {
  const auto m = mesh::clifford_torus_grid(64);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const double a0 = u(rng), a1 = u(rng), a2 = u(rng), a3 = u(rng);
    const auto f = [&](const mesh::UV& p) {
      return 1.0 + 0.5 * a0 * std::cos(p[0]) + 0.4 * a1 * std::sin(2 * p[1]) + 0.3 * a2 * std::cos(p[0] + p[1]) +
             0.2 * a3 * std::sin(p[0] - 2 * p[1]);
    };
    NormalGraphField g{&m, {}, {}, 1e-3};
    for (const auto& p : m.uv) g.phi.push_back(f(p));
    const double q = jacobi::second_variation(m, g.phi);
    const double measured = (graph_area_exact(g) - mesh::total_area(m)) / (g.h * g.h);
    CHECK(std::abs(measured - q / 2) <= 0.02 * std::abs(q / 2));
    // Residual over h³ stays bounded as h shrinks.
    double worst = 0;
    for (double h : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
      g.h = h;
      const auto est = graph_area_estimate(g);
      worst = std::max(worst, std::abs(graph_area_exact(g) - est.estimate) / std::pow(h, 3));
    }
    CHECK(worst < 100.0);
  }
}

TEST_CASE("estimate refuses non-minimal bases") {
  const auto m = mesh::parallel_torus_grid(0.5, 32, 32);
  CHECK_THROWS_AS(graph_area_estimate({&m, std::vector<double>(m.vertex_count(), 1.0), {}, 0.01}), NotMinimal);
}
