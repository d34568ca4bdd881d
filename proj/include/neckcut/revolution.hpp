#pragma once

// Surfaces of revolution about the x axis spanning the circles of radius r at x = ±h,
// and a discrete one-parameter min-max over them.

#include <vector>

#include "neckcut/report.hpp"

namespace neckcut::revolution {

/// Radii f at the uniform nodes x_i = −h + 2h·i/(n−1). Boundary values are pinned to r.
struct ProfileCurve {
  double r = 1.0;
  double h = 0.1;
  std::vector<double> f;

  std::size_t size() const { return f.size(); }
  double dx() const { return 2.0 * h / static_cast<double>(f.size() - 1); }
  double x(std::size_t i) const { return -h + dx() * static_cast<double>(i); }
  std::size_t center() const { return f.size() / 2; }
};

struct RevolutionPath {
  std::vector<double> t;  ///< slice parameters in [0, 1], nondecreasing
  std::vector<ProfileCurve> slices;
};

struct WidthResult {
  double width = 0.0;
  double argmax_t = 0.0;
  double neck_at_max = 0.0;
  ProfileCurve profile_at_max;
  int iterations = 0;
  double endpoint_max = 0.0;
  std::vector<double> slice_t;     ///< final path parameters
  std::vector<double> slice_area;  ///< final relaxed slice areas
};

struct DescentConfig {
  int nodes = 201;
  int slices = 41;
  double floor_rel = 1e-4;  ///< profile floor ε_f as a fraction of r
  int max_outer = 80;
  int max_newton = 400;
  double t_tolerance = 1e-9;  ///< bracket width in t at which tightening stops
};

/// Area of the piecewise-linear surface of revolution through the nodes (a sum of
/// frustum areas). Throws DegenerateProfile if any radius is negative.
double revolution_area(const ProfileCurve& p);

/// Samples c·cosh(x/c) on n nodes.
ProfileCurve catenoid_profile(double r, double h, double c, int nodes);

/// Profile equal to r at the two ends and `floor` at every interior node.
ProfileCurve pinched_profile(double r, double h, double floor, int nodes);

/// Two annuli with radius-t holes plus the cylinder of radius t joining them:
/// area 2πr² + 4πht − 2πt² for t in [0, r].
SweepoutReport naive_sweepout(double r, double h, const std::vector<double>& t_grid);

/// Linear interpolation in profile space from the pinched surrogate of the two disks
/// to the stable catenoid.
RevolutionPath initial_path(double r, double h, const DescentConfig& config = {});

struct RelaxResult {
  ProfileCurve profile;
  double area = 0.0;
  int steps = 0;
};

/// Minimizes area over profiles with both boundary radii and the neck radius f(0)
/// held fixed and every radius kept at or above max(`floor`, f(0)), so the neck
/// is the thinnest circle of the slice. Each accepted step lowers the
/// area (backtracking line search on a damped Newton direction).
RelaxResult relax_slice(const ProfileCurve& start, double floor, int max_steps = 400);

/// Mountain-pass width of the path family. Slices are relaxed with their neck radius
/// held fixed, so the relaxed family still joins the two endpoint configurations;
/// the bracket around the highest slice is then refined until it closes.
WidthResult mountain_pass_width(double r, double h, const RevolutionPath& path0, const DescentConfig& config = {});

struct ExcessRow {
  double h = 0.0;
  double naive_excess = 0.0;    ///< 2πh²
  double optimal_excess = 0.0;  ///< |U(r,h)| − 2πr²
  double ratio = 0.0;
};

struct ExcessComparison {
  std::vector<ExcessRow> rows;
  double loglog_slope = 0.0;  ///< slope of log(ratio) against log(−log h)
};

ExcessComparison excess_scaling_comparison(double r, const std::vector<double>& h_grid);

}  // namespace neckcut::revolution
