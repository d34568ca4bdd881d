#pragma once

#include <string>
#include <utility>
#include <vector>

#include "neckcut/mesh.hpp"
#include "neckcut/report.hpp"

namespace neckcut::s3 {

/// Neck radius η(t) = ε·sin(π·min(t, T)/T) with T = 1/2 − δ, so η(0) = 0 and η vanishes on
/// [T, 1/2]. The remaining parameter range is split in half: the holes at the grid centres
/// open over [T, T + δ/2] and the punctured torus retracts onto the grid over [T + δ/2, 1/2].
struct NeckSchedule {
  double epsilon = 0.02;
  double delta = 0.05;
  double cutoff_radius = 0.3;  ///< the holes reach metric radius cutoff_radius² when fully open

  double closing() const { return 0.5 - delta; }
  double eta(double t) const;
  void validate() const;  ///< DomainError
};

struct DoublingResolution {
  int segments = 16;  ///< cells per patch side; every hole ring has 4·segments points
  double ring_ratio = 1.1;
  int tube_rings = 32;
};

/// One slice of the doubled family. `mesh` is only filled when requested.
struct DoubledSlice {
  double t = 0.0;
  std::string phase;  ///< circles, necks, tori, opening, retracting, grid
  double area = 0.0;
  std::vector<std::pair<std::string, double>> components;
  bool regular = true;
  mesh::MeshSurface mesh;
};

DoubledSlice assemble_slice(int m, const NeckSchedule& schedule, double t, bool with_mesh = false,
                            const DoublingResolution& res = {});

/// Uniform necks phase, then the opening and retraction phases.
std::vector<double> default_doubling_t_grid(const NeckSchedule& schedule);

struct EquivarianceCheck {
  int elements = 0;
  int unmatched_vertices = 0;
  int unmatched_triangles = 0;
  bool ok() const { return elements > 0 && unmatched_vertices == 0 && unmatched_triangles == 0; }
};

/// Whether every g ∈ G_m maps the triangle set of `m` onto itself, vertices matched at `tol`.
EquivarianceCheck check_equivariance(const mesh::MeshSurface& m, int order, double tol = 1e-9);

/// Areas of the G_m-equivariant family over `t_grid` ⊂ [0, 1/2] with budget 4π². The opening
/// phase rows come from the two-sided tube family over the Clifford torus with φ ≡ 1. Checks
/// the Euler characteristic and equivariance of sample slices. BudgetViolated if some slice
/// reaches 4π².
SweepoutReport assemble_doubled_sweepout(int m, const NeckSchedule& schedule, const std::vector<double>& t_grid,
                                         const DoublingResolution& res = {});

}  // namespace neckcut::s3
