#include "neckcut/jacobi.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

#include "neckcut/errors.hpp"
#include "neckcut/numeric.hpp"

namespace neckcut::jacobi {

SparseMatrix stiffness(const MeshSurface& m) {
  const int n = static_cast<int>(m.vertices.size());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(12 * m.triangles.size());
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      // Angle at corner k is opposite the edge (i, j).
      const int o = t[k], i = t[(k + 1) % 3], j = t[(k + 2) % 3];
      const mesh::Vec4 a = m.vertices[i] - m.vertices[o];
      const mesh::Vec4 b = m.vertices[j] - m.vertices[o];
      const double cross = std::sqrt(std::max(a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2), 0.0));
      if (!(cross > 0.0)) throw DegenerateProfile("stiffness: degenerate triangle");
      const double w = 0.5 * a.dot(b) / cross;
      entries.emplace_back(i, j, -w);
      entries.emplace_back(j, i, -w);
      entries.emplace_back(i, i, w);
      entries.emplace_back(j, j, w);
    }
  }
  SparseMatrix k(n, n);
  k.setFromTriplets(entries.begin(), entries.end());
  return k;
}

std::vector<double> lumped_mass(const MeshSurface& m) {
  const auto areas = mesh::triangle_areas(m);
  std::vector<CompensatedSum> acc(m.vertices.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    for (int k : m.triangles[t]) acc[k].add(areas[t] / 3.0);
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].value();
  return out;
}

std::vector<double> potential(const MeshSurface& m) {
  if (!m.has_curvature()) throw DomainError("potential: mesh carries no curvature data");
  std::vector<double> v(m.vertices.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = m.a_norm2[i] + m.ric_nn[i];
  return v;
}

double second_variation(const MeshSurface& m, const std::vector<double>& phi) {
  if (phi.size() != m.vertices.size()) throw DomainError("second_variation: one value per vertex expected");
  const auto k = stiffness(m);
  const auto mass = lumped_mass(m);
  const auto v = potential(m);
  const Eigen::Map<const Eigen::VectorXd> f(phi.data(), static_cast<Eigen::Index>(phi.size()));
  const Eigen::VectorXd kf = k * f;
  CompensatedSum q;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    q.add(phi[i] * kf[static_cast<Eigen::Index>(i)]);
    q.add(-mass[i] * v[i] * phi[i] * phi[i]);
  }
  return q.value();
}

JacobiData jacobi_lowest(const MeshSurface& m, const JacobiOptions& options) {
  JacobiData out;
  out.stiffness = stiffness(m);
  out.mass = lumped_mass(m);
  out.potential = options.potential.empty() ? potential(m) : options.potential;
  const std::size_t n = m.vertices.size();
  if (out.potential.size() != n) throw DomainError("jacobi_lowest: one potential value per vertex expected");
  if (!options.dirichlet.empty() && options.dirichlet.size() != n)
    throw DomainError("jacobi_lowest: one Dirichlet flag per vertex expected");

  // Unknowns are the vertices not held at zero.
  std::vector<int> index(n, -1);
  std::vector<int> free;
  for (std::size_t i = 0; i < n; ++i)
    if (options.dirichlet.empty() || !options.dirichlet[i]) {
      index[i] = static_cast<int>(free.size());
      free.push_back(static_cast<int>(i));
    }
  const int nf = static_cast<int>(free.size());
  if (nf == 0) throw DomainError("jacobi_lowest: every vertex is constrained");

  // Gershgorin lower bound of M⁻¹(K − MV) over the free rows.
  std::vector<double> centre(n, 0.0), radius(n, 0.0);
  for (int col = 0; col < out.stiffness.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(out.stiffness, col); it; ++it) {
      if (it.row() == it.col()) centre[it.row()] += it.value();
      else if (index[it.col()] >= 0) radius[it.row()] += std::abs(it.value());
    }
  double bound = std::numeric_limits<double>::infinity();
  for (int i : free) bound = std::min(bound, (centre[i] - radius[i]) / out.mass[i] - out.potential[i]);
  out.shift = bound - 1.0;

  std::vector<Eigen::Triplet<double>> entries;
  for (int col = 0; col < out.stiffness.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(out.stiffness, col); it; ++it) {
      const int r = index[it.row()], c = index[it.col()];
      if (r >= 0 && c >= 0) entries.emplace_back(r, c, it.value());
    }
  Eigen::VectorXd mass(nf), pot(nf);
  for (int k = 0; k < nf; ++k) {
    mass[k] = out.mass[free[k]];
    pot[k] = out.potential[free[k]];
    entries.emplace_back(k, k, -mass[k] * pot[k] - out.shift * mass[k]);
  }
  SparseMatrix a(nf, nf);
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<SparseMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw SolverFailure("jacobi_lowest: factorization failed");

  const auto rayleigh = [&](const Eigen::VectorXd& x) {
    // xᵀ(A + σM)x / xᵀMx with A the shifted matrix.
    const double num = x.dot(a * x) + out.shift * x.dot(mass.cwiseProduct(x));
    return num / x.dot(mass.cwiseProduct(x));
  };
  Eigen::VectorXd x = Eigen::VectorXd::Ones(nf);
  double quotient = rayleigh(x);
  bool converged = false;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    Eigen::VectorXd y = solver.solve(mass.cwiseProduct(x));
    if (solver.info() != Eigen::Success) throw SolverFailure("jacobi_lowest: solve failed");
    y /= std::sqrt(y.dot(mass.cwiseProduct(y)));
    const double next = rayleigh(y);
    x = std::move(y);
    const bool settled = std::abs(next - quotient) <= options.tolerance * std::max(1.0, std::abs(next));
    quotient = next;
    if (settled && it > 0) {
      converged = true;
      break;
    }
  }
  if (!converged) throw SolverFailure("jacobi_lowest: inverse iteration did not converge");
  if (x.sum() < 0.0) x = -x;
  out.eigenvalue = quotient;
  out.iterations = it + 1;
  out.eigenfunction.assign(n, 0.0);
  for (int k = 0; k < nf; ++k) out.eigenfunction[free[k]] = x[k];
  return out;
}

}  // namespace neckcut::jacobi
