#include "neckcut/catenoid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "neckcut/errors.hpp"
#include "neckcut/numeric.hpp"

namespace neckcut::catenoid {

namespace {

constexpr double kPi = std::numbers::pi;

// sign(cosh(x) − λx) evaluated in log space.
double log_residual(double x, double lambda) { return log_cosh(x) - std::log(lambda) - std::log(x); }

}  // namespace

double log_cosh(double x) {
  x = std::abs(x);
  if (x < 1.0) {
    // cosh(x) − 1 = 2·sinh²(x/2)
    const double s = std::sinh(0.5 * x);
    return std::log1p(2.0 * s * s);
  }
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

double tangency_point() {
  static const double x0 = [] {
    const auto res = bisect([](double x) { return x * std::tanh(x) - 1.0; }, 1.0, 2.0, kMaxBisection);
    return res.root;
  }();
  return x0;
}

double critical_ratio() { return 1.0 / std::sinh(tangency_point()); }

double area_of_catenoid(double r, double h, double c) {
  if (!(c > 0.0) || !(c < r)) throw DomainError("area_of_catenoid: need 0 < c < r");
  return 2.0 * kPi * r * std::sqrt((r - c) * (r + c)) + 2.0 * kPi * h * c;
}

double estimate_bound(double r, double h) {
  if (!(h > 0.0) || !(h < 1.0)) throw DomainError("estimate_bound: need 0 < h < 1");
  return 2.0 * kPi * r * r + 4.0 * kPi * h * h / (-std::log(h));
}

CatenoidSolution solve_parameters(const CatenoidSpec& spec) {
  const double r = spec.r;
  const double h = spec.h;
  if (!(r > 0.0) || !(h > 0.0)) throw DomainError("solve_parameters: need r > 0 and h > 0");
  const double lambda = r / h;
  // Tangency of cosh(x) and λx in the variable x = h/c.
  const double x_mid = std::asinh(lambda);
  const double g_mid = log_residual(x_mid, lambda);

  CatenoidSolution sol;
  sol.spec = spec;
  if (g_mid > 0.0) {
    // Within rounding of the double root the two catenoids coincide.
    if (g_mid > 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(std::log(lambda))))
      throw NoCatenoid("solve_parameters: h/r = " + std::to_string(h / r) + " exceeds the critical ratio " +
                       std::to_string(critical_ratio()));
    sol.c_unstable = sol.c_stable = h / x_mid;
  } else {
    const auto g = [lambda](double x) { return log_residual(x, lambda); };
    const double x_left = 1.0 / lambda;
    double x_right = 2.0 * x_mid;
    int doublings = 0;
    while (g(x_right) <= 0.0) {
      x_right *= 2.0;
      if (++doublings > 60) throw NonConvergence("solve_parameters: cannot bracket the large root");
    }
    const auto small = bisect(g, x_left, x_mid, kMaxBisection);
    const auto large = bisect(g, x_mid, x_right, kMaxBisection);
    if (!small.converged || !large.converged) throw NonConvergence("solve_parameters: bisection failed to bracket");
    sol.c_stable = h / small.root;
    sol.c_unstable = h / large.root;
    sol.iterations = small.iterations + large.iterations;
  }

  for (double c : {sol.c_unstable, sol.c_stable}) {
    // |c·cosh(h/c) − r| / r computed as |exp(log c + log cosh(h/c) − log r) − 1|.
    const double rel = std::abs(std::expm1(std::log(c) + log_cosh(h / c) - std::log(r)));
    if (rel > kRootTolerance) throw NonConvergence("solve_parameters: root residual " + std::to_string(rel));
  }
  // sqrt(r² − c²) = r·tanh(h/c) on the solution curve; stays accurate when c rounds to r.
  const auto area = [r, h](double c) { return 2.0 * kPi * r * r * std::tanh(h / c) + 2.0 * kPi * h * c; };
  sol.area_unstable = area(sol.c_unstable);
  sol.area_stable = area(sol.c_stable);
  return sol;
}

EstimateScan asymptotic_ratio_scan(double r, const std::vector<double>& h_grid) {
  for (std::size_t i = 1; i < h_grid.size(); ++i)
    if (!(h_grid[i] < h_grid[i - 1])) throw DomainError("asymptotic_ratio_scan: h_grid must be strictly decreasing");
  EstimateScan scan;
  scan.r = r;
  scan.h_grid = h_grid;
  scan.rows.resize(h_grid.size());
  parallel_for(h_grid.size(), [&](std::size_t i) {
    const double h = h_grid[i];
    const auto sol = solve_parameters({r, h});
    ScanRow row;
    row.h = h;
    row.c_unstable = sol.c_unstable;
    row.area_unstable = sol.area_unstable;
    row.bound_value = estimate_bound(r, h);
    row.asymptotic_ratio = sol.c_unstable * (-std::log(h)) / h;
    row.bound_holds = row.area_unstable <= row.bound_value;
    scan.rows[i] = row;
  });
  return scan;
}

ThresholdResult find_estimate_threshold(double r, double h_min, double ratio) {
  const double h_start = std::min(critical_ratio() * r * (1.0 - 1e-6), 1.0 - 1e-9);
  ThresholdResult out;
  out.h0 = 0.0;
  double h = h_start;
  // Walk from the smallest h upward; h0 is the top of the contiguous passing run.
  std::vector<double> grid;
  while (h >= h_min) {
    grid.push_back(h);
    h *= ratio;
  }
  out.grid_points = static_cast<int>(grid.size());
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    const auto sol = solve_parameters({r, *it});
    if (sol.area_unstable <= estimate_bound(r, *it)) {
      out.h0 = *it;
    } else {
      out.first_failure = *it;
      break;
    }
  }
  return out;
}

}  // namespace neckcut::catenoid
