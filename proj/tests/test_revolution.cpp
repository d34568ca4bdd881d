#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "neckcut/catenoid.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/numeric.hpp"
#include "neckcut/revolution.hpp"

using namespace neckcut;
using namespace neckcut::revolution;
using std::numbers::pi;

TEST_CASE("cylinder area") {
  ProfileCurve p{1.0, 0.1, std::vector<double>(101, 1.0)};
  CHECK(revolution_area(p) == doctest::Approx(0.4 * pi).epsilon(1e-14));
  p.f[3] = -0.1;
  CHECK_THROWS_AS(revolution_area(p), DegenerateProfile);
}

TEST_CASE("catenoid profile area and second-order convergence") {
  const auto sol = catenoid::solve_parameters({1.0, 0.1});
  const double exact = catenoid::area_of_catenoid(1.0, 0.1, sol.c_unstable);
  // The pinned boundary value differs from c·cosh(h/c) by the root residual only.
  CHECK(std::abs(revolution_area(catenoid_profile(1.0, 0.1, sol.c_unstable, 10001)) - exact) / exact < 1e-6);
  std::vector<double> lx, ly;
  for (int n : {401, 801, 1601, 3201}) {
    const double err = std::abs(revolution_area(catenoid_profile(1.0, 0.1, sol.c_unstable, n)) - exact);
    lx.push_back(std::log(2.0 * 0.1 / (n - 1)));
    ly.push_back(std::log(err));
  }
  const double slope = fit_line(lx, ly).slope;
  CHECK(slope >= 1.8);
  CHECK(slope <= 2.2);
}

TEST_CASE("naive sweepout excess is 2 pi h^2 at t = h") {
  const auto grid = linear_grid(0.0, 1.0, 2001);
  const auto rep = naive_sweepout(1.0, 0.1, grid);
  CHECK(rep.summary.sup_area == doctest::Approx(2 * pi + 2 * pi * 0.01).epsilon(1e-12));
  CHECK(std::abs(rep.summary.argsup_t - 0.1) <= grid[1]);
  // Dense-grid oracle for max_t (4πht − 2πt²).
  double best = 0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = i * 1e-5;
    best = std::max(best, 4 * pi * 0.1 * t - 2 * pi * t * t);
  }
  CHECK(rep.metric("excess") == doctest::Approx(best).epsilon(1e-8));
  for (double h : {1e-2, 1e-3}) {
    const auto r2 = naive_sweepout(1.0, h, linear_grid(0.0, 2 * h, 2001));
    CHECK(r2.metric("excess") / (h * h) == doctest::Approx(2 * pi).epsilon(1e-9));
  }
}

TEST_CASE("relaxation never increases area and keeps the neck") {
  auto path = initial_path(1.0, 0.3);
  for (std::size_t k : {5u, 20u, 35u}) {
    const double before = revolution_area(path.slices[k]);
    const auto res = relax_slice(path.slices[k], 1e-4);
    CHECK(res.area <= before);
    CHECK(res.profile.f[res.profile.center()] == path.slices[k].f[path.slices[k].center()]);
    CHECK(res.profile.f.front() == 1.0);
    CHECK(res.profile.f.back() == 1.0);
  }
}

TEST_CASE("mountain pass width recovers the unstable catenoid") {
  for (double h : {0.3, 0.5}) {
    const auto start = std::chrono::steady_clock::now();
    const auto sol = catenoid::solve_parameters({1.0, h});
    const auto res = mountain_pass_width(1.0, h, initial_path(1.0, h));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 60.0);
    CHECK(std::abs(res.width - sol.area_unstable) / sol.area_unstable <= 5e-3);
    CHECK(res.width >= res.endpoint_max);
    double sup = 0;
    for (std::size_t i = 0; i < res.profile_at_max.size(); ++i) {
      const double x = res.profile_at_max.x(i);
      sup = std::max(sup, std::abs(res.profile_at_max.f[i] - sol.c_unstable * std::cosh(x / sol.c_unstable)));
    }
    CHECK(sup <= 1e-2);
    MESSAGE("h=" << h << " width=" << res.width << " exact=" << sol.area_unstable << " sup=" << sup
                 << " iters=" << res.iterations << " secs=" << secs);
  }
}

TEST_CASE("duplicate slices leave the width unchanged") {
  auto path = initial_path(1.0, 0.3);
  const auto base = mountain_pass_width(1.0, 0.3, path);
  auto dup = path;
  dup.t.insert(dup.t.begin() + 10, dup.t[10]);
  dup.slices.insert(dup.slices.begin() + 10, dup.slices[10]);
  const auto res = mountain_pass_width(1.0, 0.3, dup);
  CHECK(std::abs(res.width - base.width) <= 1e-12);
}

TEST_CASE("excess scaling: naive over optimal grows like -log h") {
  const auto cmp = excess_scaling_comparison(1.0, {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7});
  // Closed-form values frozen from 50-digit evaluation.
  CHECK(cmp.rows[0].ratio == doctest::Approx(7.820848294150129).epsilon(1e-8));
  CHECK(cmp.rows[2].ratio == doctest::Approx(12.944008203761895).epsilon(1e-8));
  CHECK(cmp.rows[0].ratio > 1.0);
  CHECK(std::abs(cmp.loglog_slope - 1.0) <= 0.25);
}
