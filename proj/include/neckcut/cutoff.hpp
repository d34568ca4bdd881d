#pragma once

#include <vector>

#include "neckcut/mesh.hpp"

namespace neckcut::cutoff {

using mesh::MeshSurface;

/// η_t(r) = (log t² − log r)/log t on [t², t], 0 below and 1 above.
double log_cutoff(double t, double r);

struct CutoffField {
  const MeshSurface* mesh = nullptr;
  double t = 0.0;
  std::vector<double> distance;  ///< mesh geodesic distance to the centre
  std::vector<double> values;    ///< η_t(distance)
};

/// Cutoff around vertex p. Throws DomainError unless 0 < t < 1 and RadiusTooLarge when
/// {distance < t} is not a topological disk on the mesh.
CutoffField build_cutoff(const MeshSurface& m, int p, double t);

/// Cutoff on a mesh punctured at the centre: `rings` are hole boundaries whose points lie at
/// distance `ring_distance` from their centres. Each sublevel set {distance < t} must be a
/// union of annuli, one per hole.
CutoffField build_cutoff_punctured(const MeshSurface& m, const std::vector<std::vector<int>>& rings,
                                   double ring_distance, double t);

/// ∫|∇(η_t∘r_h)|² with r_h the piecewise linear interpolant of the distance, integrated in
/// closed form on every triangle.
double cutoff_energy(const CutoffField& c);

/// Length of the level set {r_h = λ} on the mesh.
double level_perimeter(const CutoffField& c, double lambda);

struct PerimeterFit {
  double d_fit = 0.0;  ///< sup over sampled λ ∈ [t², t] of |{r_h = λ}|/λ
  double argmax_lambda = 0.0;
  std::vector<double> lambda;
  std::vector<double> perimeter;
};

PerimeterFit fit_perimeter_constant(const CutoffField& c, int samples = 200);

}  // namespace neckcut::cutoff
