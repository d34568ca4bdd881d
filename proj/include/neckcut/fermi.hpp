#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "neckcut/mesh.hpp"

namespace neckcut::fermi {

using mesh::MeshSurface;
using Mat2 = Eigen::Matrix2d;

/// Second-order jet of the parallel metrics g_z = g0 − 2zA + z²T on one triangle, written in
/// the basis of its two edge vectors out of corner 0.
struct TriangleJet {
  Mat2 g0;
  Mat2 A;
  Mat2 T;
};

struct MetricJet {
  std::vector<TriangleJet> triangles;
  std::vector<double> weights;          ///< triangle areas
  double ric_nn = 0.0;                  ///< ambient Ric(N, N): 2 in the unit S³, 0 in R³
  double max_abs_mean_curvature = 0.0;  ///< max |tr(g0⁻¹A)|
};

/// Per-triangle jet from the vertex shape operators (finite-difference ones when the mesh
/// carries none). The ambient term of T is −g0 in the unit S³ and 0 in R³.
MetricJet metric_jet(const MeshSurface& m);

/// Coefficients of det(g + εX + ε²Y) = det(g)·(1 + c1·ε + c2·ε² + O(ε³)) and of
/// (g + εX + ε²Y)⁻¹ = inv0 + ε·inv1 + ε²·inv2 + O(ε³).
struct Expansion {
  double det0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::array<Mat2, 3> inverse;
};

/// Throws NotPositiveDefinite unless g is symmetric positive definite.
Expansion expand_det_inverse(const Mat2& g, const Mat2& x, const Mat2& y);

struct JetExpansion {
  std::vector<Expansion> triangles;  ///< with X = −2A, Y = T
  double mean_c1 = 0.0;              ///< area-weighted
  double mean_c2 = 0.0;
  double trace_a_residual = 0.0;     ///< max |tr(g⁻¹A)|
  double trace_t_residual = 0.0;     ///< max |tr(g⁻¹T) − (|A|² − Ric)|
  double tr2_residual = 0.0;         ///< max |σ₂(g⁻¹A) + |A|²/2|
  double c2_residual = 0.0;          ///< max |c2 + |A|² + Ric(N, N)|
};

/// Expands every triangle of the jet; throws NotPositiveDefinite if g0 − 2εA + ε²T fails to
/// be positive definite on some triangle.
JetExpansion det_and_inverse_expansion(const MetricJet& jet, double eps);

/// Normal graph of h·φ over a base mesh. `phi_mid` optionally gives φ at the edge midpoints
/// of quadratic meshes; otherwise it is interpolated linearly.
struct NormalGraphField {
  const MeshSurface* base = nullptr;
  std::vector<double> phi;
  std::vector<std::array<double, 3>> phi_mid;
  double h = 0.0;
};

/// Pushes the base along the normal exponential map by h·φ and re-measures the area.
double graph_area_exact(const NormalGraphField& g);

struct GraphAreaEstimate {
  double base_area = 0.0;
  double q = 0.0;         ///< ∫|∇φ|² − φ²(|A|² + Ric(N, N))
  double estimate = 0.0;  ///< base_area + h²/2·q
  double envelope = 0.0;  ///< C·h³·∫(1 + |∇φ|²)
  double minimality_residual = 0.0;
};

/// Two-term expansion of the graph area. Throws NotMinimal when max |tr(g0⁻¹A)| exceeds
/// `minimality_tolerance`.
GraphAreaEstimate graph_area_estimate(const NormalGraphField& g, double envelope_constant = 1.0,
                                      double minimality_tolerance = 1e-2);

}  // namespace neckcut::fermi
