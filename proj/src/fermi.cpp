#include "neckcut/fermi.hpp"

#include <cmath>

#include "neckcut/errors.hpp"
#include "neckcut/jacobi.hpp"
#include "neckcut/numeric.hpp"

namespace neckcut::fermi {

MetricJet metric_jet(const MeshSurface& m) {
  const MeshSurface* src = &m;
  MeshSurface fd;
  if (m.shape.size() != m.vertices.size()) {
    fd = m;
    mesh::finite_difference_curvature(fd);
    src = &fd;
  }
  const double kappa = m.ambient == mesh::Ambient::round_s3 ? 1.0 : 0.0;
  MetricJet jet;
  jet.ric_nn = 2.0 * kappa;
  jet.triangles.reserve(m.triangles.size());
  for (const auto& t : m.triangles) {
    const mesh::Vec4 e1 = m.vertices[t[1]] - m.vertices[t[0]];
    const mesh::Vec4 e2 = m.vertices[t[2]] - m.vertices[t[0]];
    const mesh::Mat4 s = (src->shape[t[0]] + src->shape[t[1]] + src->shape[t[2]]) / 3.0;
    TriangleJet j;
    j.g0 << e1.dot(e1), e1.dot(e2), e2.dot(e1), e2.dot(e2);
    j.A << e1.dot(s * e1), e1.dot(s * e2), e2.dot(s * e1), e2.dot(s * e2);
    j.A = 0.5 * (j.A + j.A.transpose()).eval();
    j.T = j.A * j.g0.inverse() * j.A - kappa * j.g0;
    jet.weights.push_back(0.5 * std::sqrt(std::max(j.g0.determinant(), 0.0)));
    jet.max_abs_mean_curvature = std::max(jet.max_abs_mean_curvature, std::abs((j.g0.inverse() * j.A).trace()));
    jet.triangles.push_back(j);
  }
  return jet;
}

Expansion expand_det_inverse(const Mat2& g, const Mat2& x, const Mat2& y) {
  Eigen::SelfAdjointEigenSolver<Mat2> eig(0.5 * (g + g.transpose()));
  if ((g - g.transpose()).norm() > 1e-12 * g.norm() || !(eig.eigenvalues().minCoeff() > 0.0))
    throw NotPositiveDefinite("expand_det_inverse: g is not positive definite");
  const Mat2 gi = g.inverse();
  const Mat2 b = gi * x;
  const Mat2 c = gi * y;
  Expansion e;
  e.det0 = g.determinant();
  e.c1 = b.trace();
  e.c2 = c.trace() + b.determinant();
  e.inverse[0] = gi;
  e.inverse[1] = -b * gi;
  e.inverse[2] = (b * b - c) * gi;
  return e;
}

JetExpansion det_and_inverse_expansion(const MetricJet& jet, double eps) {
  JetExpansion out;
  CompensatedSum c1, c2, w;
  for (std::size_t k = 0; k < jet.triangles.size(); ++k) {
    const auto& j = jet.triangles[k];
    const Mat2 ge = j.g0 - 2.0 * eps * j.A + eps * eps * j.T;
    Eigen::SelfAdjointEigenSolver<Mat2> eig(ge);
    if (!(eig.eigenvalues().minCoeff() > 0.0))
      throw NotPositiveDefinite("det_and_inverse_expansion: g_eps is not positive definite");
    out.triangles.push_back(expand_det_inverse(j.g0, -2.0 * j.A, j.T));
    const double wk = jet.weights.empty() ? 1.0 : jet.weights[k];
    c1.add(wk * out.triangles.back().c1);
    c2.add(wk * out.triangles.back().c2);
    w.add(wk);
    const Mat2 ga = j.g0.inverse() * j.A;
    const double a2 = (ga * ga).trace();
    const double ric = jet.ric_nn;
    out.c2_residual = std::max(out.c2_residual, std::abs(out.triangles.back().c2 + a2 + ric));
    out.trace_a_residual = std::max(out.trace_a_residual, std::abs(ga.trace()));
    out.trace_t_residual = std::max(out.trace_t_residual, std::abs((j.g0.inverse() * j.T).trace() - (a2 - ric)));
    out.tr2_residual = std::max(out.tr2_residual, std::abs(ga.determinant() + 0.5 * a2));
  }
  out.mean_c1 = c1.value() / w.value();
  out.mean_c2 = c2.value() / w.value();
  return out;
}

namespace {

void check_field(const NormalGraphField& g) {
  if (!g.base) throw DomainError("normal graph: no base mesh");
  if (g.phi.size() != g.base->vertices.size()) throw DomainError("normal graph: one phi value per vertex expected");
  if (!g.phi_mid.empty() && g.phi_mid.size() != g.base->triangles.size())
    throw DomainError("normal graph: one phi_mid triple per triangle expected");
}

}  // namespace

double graph_area_exact(const NormalGraphField& g) {
  check_field(g);
  std::vector<double> offset(g.phi.size());
  for (std::size_t i = 0; i < offset.size(); ++i) offset[i] = g.h * g.phi[i];
  if (g.phi_mid.empty() || !g.base->quadratic()) return mesh::total_area(mesh::push_along_normals(*g.base, offset));
  std::vector<std::array<double, 3>> mid(g.phi_mid.size());
  for (std::size_t t = 0; t < mid.size(); ++t)
    for (int k = 0; k < 3; ++k) mid[t][k] = g.h * g.phi_mid[t][k];
  return mesh::total_area(mesh::push_along_normals(*g.base, offset, &mid));
}

GraphAreaEstimate graph_area_estimate(const NormalGraphField& g, double envelope_constant,
                                      double minimality_tolerance) {
  check_field(g);
  GraphAreaEstimate out;
  out.minimality_residual = metric_jet(*g.base).max_abs_mean_curvature;
  if (out.minimality_residual > minimality_tolerance)
    throw NotMinimal("graph_area_estimate: base surface is not minimal to tolerance");
  out.base_area = mesh::total_area(*g.base);
  const auto k = jacobi::stiffness(*g.base);
  const Eigen::Map<const Eigen::VectorXd> f(g.phi.data(), static_cast<Eigen::Index>(g.phi.size()));
  const double dirichlet = f.dot(k * f);
  out.q = jacobi::second_variation(*g.base, g.phi);
  out.estimate = out.base_area + 0.5 * g.h * g.h * out.q;
  out.envelope = envelope_constant * std::pow(std::abs(g.h), 3) * (out.base_area + dirichlet);
  return out;
}

}  // namespace neckcut::fermi
