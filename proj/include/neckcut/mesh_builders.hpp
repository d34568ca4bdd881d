#pragma once

#include <functional>
#include <vector>

#include "neckcut/mesh.hpp"

namespace neckcut::mesh {

/// Product torus T_a = {(cos a·e^{iθ}, sin a·e^{iφ})} in S³ with unit normal
/// (−sin a·e^{iθ}, cos a·e^{iφ}). The Clifford torus is a = π/4.
ParamSurface parallel_torus(double a);

/// Catenoid of neck radius c in R³ with u the angle and v the height.
ParamSurface catenoid_surface(double c);

/// n_theta × n_phi periodic grid on T_a, each square split along its diagonal.
MeshSurface parallel_torus_grid(double a, int n_theta, int n_phi);
MeshSurface clifford_torus_grid(int n);
/// Band 0 ≤ φ ≤ phi_span of T_a, periodic in θ only.
MeshSurface parallel_torus_band(double a, int n_theta, int n_phi, double phi_span);

/// Catenoid band |v| ≤ v_max with n_u angular and n_v axial cells.
MeshSurface catenoid_patch(double c, double v_max, int n_u, int n_v);

/// Unit disk with a centre vertex, n_ang spokes and geometric rings from r_min to 1 with
/// ratio at most q. Radial edges lie on rays so edge-path distance from the centre is exact.
MeshSurface flat_polar_disk(int n_ang, double r_min, double q);

/// Unit sphere in R³ from a subdivided icosahedron, outward normal.
MeshSurface icosphere(int subdivisions);

/// Square patch decomposition of a periodic (θ, φ) torus parameter domain.
///
/// The domain [0, 2π)² is cut into patches × patches squares. Each square is either a plain
/// grid with `segments` cells per side, or carries a hole curve around its centre joined to
/// the square boundary by graded rings aligned with the rays through the boundary points.
struct PatchHole {
  int patch_i = 0;  ///< square index along θ
  int patch_j = 0;  ///< square index along φ
  /// Offset (dθ, dφ) from the square centre of the hole curve point in direction ψ.
  /// The curve must be star-shaped about the centre and lie well inside the square.
  std::function<UV(double psi)> curve;
  bool fill_centre = false;  ///< close the innermost ring with a fan around the centre
};

struct PatchLayout {
  int patches = 4;
  int segments = 16;
  double ring_ratio = 1.1;  ///< target growth between consecutive rings
  std::vector<PatchHole> holes;
};

struct PatchMesh {
  std::vector<UV> uv;
  std::vector<Tri> triangles;
  std::vector<std::vector<int>> hole_rings;  ///< innermost ring per hole, ordered by ψ
  std::vector<int> centres;                  ///< centre vertex per hole, −1 if open
  std::vector<double> ring_psi;              ///< ψ values of every ring (same for all holes)
};

PatchMesh patch_torus_layout(const PatchLayout& layout);

/// Ray directions ψ_j of the boundary points of a square patch with `segments` cells per side.
std::vector<double> patch_ring_angles(int segments);

/// Circle of metric radius ρ about the square centre of T_a (an ellipse in (θ, φ)).
std::function<UV(double)> metric_circle(double a, double rho);

}  // namespace neckcut::mesh
