#pragma once

// Catenoids spanning two coaxial circles of radius r at x = ±h.
//
// The neck parameter c solves r = c·cosh(h/c). Writing x = h/c and λ = r/h turns
// this into cosh(x) = λ·x, which has two roots when λ exceeds the tangency value.
// The larger x (smaller c) is the unstable catenoid, the smaller x the stable one.

#include <vector>

namespace neckcut::catenoid {

struct CatenoidSpec {
  double r = 1.0;  ///< boundary circle radius
  double h = 0.1;  ///< half-separation of the circles
};

struct CatenoidSolution {
  CatenoidSpec spec;
  double c_unstable = 0.0;
  double c_stable = 0.0;
  double area_unstable = 0.0;
  double area_stable = 0.0;
  int iterations = 0;
};

struct ScanRow {
  double h = 0.0;
  double c_unstable = 0.0;
  double area_unstable = 0.0;
  double bound_value = 0.0;
  double asymptotic_ratio = 0.0;  ///< c_unstable·(−log h)/h
  bool bound_holds = false;
};

struct EstimateScan {
  double r = 1.0;
  std::vector<double> h_grid;
  std::vector<ScanRow> rows;
};

inline constexpr double kRootTolerance = 1e-10;
inline constexpr int kMaxBisection = 200;

/// Root x₀ of x·tanh(x) = 1, where cosh(x) = λx is tangent.
double tangency_point();

/// ρ* = 1/sinh(x₀): the largest h/r for which a catenoid exists.
double critical_ratio();

/// log(cosh(x)) without overflow for large x or cancellation for small x.
double log_cosh(double x);

CatenoidSolution solve_parameters(const CatenoidSpec& spec);

/// 2πr·sqrt(r² − c²) + 2πhc. Throws DomainError unless 0 < c < r.
double area_of_catenoid(double r, double h, double c);

/// 2πr² + 4πh²/(−log h). Throws DomainError unless 0 < h < 1.
double estimate_bound(double r, double h);

/// Per-h rows of the unstable neck parameter, its area, the bound and the ratio
/// c(−log h)/h. The grid must be strictly decreasing.
EstimateScan asymptotic_ratio_scan(double r, const std::vector<double>& h_grid);

struct ThresholdResult {
  double h0 = 0.0;        ///< largest grid h below which the bound held at every grid point
  double first_failure = 0.0;  ///< largest grid h where it failed, 0 if none
  int grid_points = 0;
};

/// Scans h on a geometric grid from just below ρ*·r (capped below 1) down to h_min
/// and reports the empirical threshold h₀(r) of the area estimate.
ThresholdResult find_estimate_threshold(double r, double h_min = 1e-12, double ratio = 0.9);

}  // namespace neckcut::catenoid
