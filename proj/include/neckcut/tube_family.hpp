#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <vector>

#include "neckcut/report.hpp"

namespace neckcut::fermi {

/// Two normal graphs ±h·φ·η_t over a product torus T_a in S³, joined across disks
/// B_{t²}(p_i) removed around the punctures. The punctures sit at patch centres of the
/// patch layout, which is remeshed for every t so that each hole boundary is a mesh ring.
struct TubeFamilyConfig {
  double a = std::numbers::pi / 4;
  std::function<double(double, double)> phi;  ///< of (θ, φ); empty means φ ≡ 1
  std::vector<std::array<int, 2>> punctures{{0, 1}, {1, 0}};
  int patches = 4;
  int segments = 16;
  double ring_ratio = 1.1;
  double h = 0.05;
  std::vector<double> t_grid;  ///< t = 0 is the unpunctured pair of graphs
};

std::vector<double> default_tube_t_grid();

/// Report rows carry the two sheet areas; the budget is 2|Σ| in closed form and the metric
/// "kappa" is margin/h². Errors from cutoff construction and the normal chart propagate.
SweepoutReport two_sided_tube_family(const TubeFamilyConfig& config);

}  // namespace neckcut::fermi
