#pragma once

#include <vector>

#include "neckcut/report.hpp"

namespace neckcut::neck {

/// Volume comparison constants c ≤ C for necks and balls, second variation constant A,
/// offset h and outer hole radius R of an n-dimensional hypersurface. n = 2 is admitted as
/// the critical-dimension control.
struct NeckScalingConfig {
  int n = 3;
  double c = 1.0;
  double C = 1.0;
  double A = 1.0;
  double h = 0.01;
  double R = 0.1;

  void validate() const;  ///< DomainError
};

/// cost(t) = 2Cht^{n−1} − 2ctⁿ, the area added by the neck of radius t minus the balls removed.
double neck_cost(const NeckScalingConfig& cfg, double t);

/// C(n−1)h/(cn).
double optimal_neck_radius(const NeckScalingConfig& cfg);

/// B with cost(t*) = B·hⁿ: 2·(C(n−1)/(cn))^{n−1}·C/n.
double cost_constant(const NeckScalingConfig& cfg);

/// Largest h0 ≤ c/(2C) with B·hⁿ ≤ (A/2)h² on (0, h0]: (A/(2B))^{1/(n−2)} for n ≥ 3.
/// For n = 2 it is c/(2C) when B ≤ A/2 and 0 otherwise.
double regime_threshold(const NeckScalingConfig& cfg);

/// B·hⁿ. RegimeViolation if h > regime_threshold.
double max_neck_cost(const NeckScalingConfig& cfg);

struct NeckCostCurve {
  std::vector<double> t_grid;
  std::vector<double> cost;
  double t_star = 0.0;    ///< grid argmax
  double max_cost = 0.0;  ///< grid max
};

/// Dense scan of cost on [0, Ch/c], where the cost returns to zero.
NeckCostCurve neck_cost_curve(const NeckScalingConfig& cfg, int samples = 100001);

/// Guaranteed drop 2cRⁿ − 2CR^{n−1}h once the hole is open to radius R, below the doubled
/// area. It is at least cRⁿ when h ≤ cR/(2C). RegimeViolation unless h ≤ min(h0, cR/(2C)).
double opened_hole_drop(const NeckScalingConfig& cfg);

/// Least-squares slope of log B·hⁿ against log h.
double cost_exponent(const NeckScalingConfig& cfg, const std::vector<double>& h_grid);

/// Largest grid h such that cost ≤ (A/2)h² at it and every smaller grid h, from direct
/// evaluation of the cost at its scanned maximum. 0 if the smallest h already fails.
double scan_regime_threshold(const NeckScalingConfig& cfg, const std::vector<double>& h_grid);

/// h ∈ {1e−1, …, 1e−4} on a geometric grid.
std::vector<double> default_h_grid();

/// Rows (h, max cost) with the quadratic gain alongside; metrics slope, B, t_star, h0.
SweepoutReport neck_fit_report(const NeckScalingConfig& cfg, const std::vector<double>& h_grid);

}  // namespace neckcut::neck
