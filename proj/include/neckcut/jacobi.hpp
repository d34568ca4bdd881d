#pragma once

#include <Eigen/Sparse>

#include <vector>

#include "neckcut/mesh.hpp"

namespace neckcut::jacobi {

using mesh::MeshSurface;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Cotangent stiffness of the flat chord triangles: uᵀKu = ∫|∇u|² for piecewise linear u.
SparseMatrix stiffness(const MeshSurface& m);

/// Lumped mass: a third of every triangle's (quadratic when available) area per corner.
std::vector<double> lumped_mass(const MeshSurface& m);

/// |A|² + Ric(N, N) per vertex.
std::vector<double> potential(const MeshSurface& m);

/// Q(φ) = ∫|∇φ|² − ∫φ²(|A|² + Ric(N, N)).
double second_variation(const MeshSurface& m, const std::vector<double>& phi);

struct JacobiOptions {
  std::vector<double> potential;  ///< overrides the mesh potential when non-empty
  std::vector<char> dirichlet;    ///< vertices held at zero when non-empty
  double tolerance = 1e-9;        ///< on successive Rayleigh quotients
  int max_iterations = 2000;
};

struct JacobiData {
  SparseMatrix stiffness;
  std::vector<double> mass;
  std::vector<double> potential;
  double eigenvalue = 0.0;
  std::vector<double> eigenfunction;  ///< Σ mass·φ² = 1, positive on average
  double shift = 0.0;
  int iterations = 0;
};

/// Lowest eigenpair of −L = −Δ − (|A|² + Ric(N, N)) by shifted inverse iteration on
/// (K − MV)φ = λMφ. The shift sits below the Gershgorin bound of M⁻¹(K − MV), so the
/// shifted matrix is positive definite and iteration converges to the bottom of the spectrum.
/// Throws SolverFailure when the quotient has not settled after max_iterations.
JacobiData jacobi_lowest(const MeshSurface& m, const JacobiOptions& options = {});

}  // namespace neckcut::jacobi
