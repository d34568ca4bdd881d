#include "neckcut/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "neckcut/errors.hpp"
#include "neckcut/geodesic.hpp"
#include "neckcut/numeric.hpp"

namespace neckcut::cutoff {

double log_cutoff(double t, double r) {
  if (r <= t * t) return 0.0;
  if (r >= t) return 1.0;
  return (std::log(t * t) - std::log(r)) / std::log(t);
}

namespace {

void check_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("cutoff: t must lie in (0, 1)");
}

// Euler characteristic of the union of triangles lying entirely in {distance < t}.
int sublevel_euler(const MeshSurface& m, const std::vector<double>& d, double t) {
  MeshSurface sub;
  sub.vertices = m.vertices;
  for (const auto& tri : m.triangles)
    if (d[tri[0]] < t && d[tri[1]] < t && d[tri[2]] < t) sub.triangles.push_back(tri);
  if (sub.triangles.empty()) return 0;
  return mesh::euler_characteristic(sub);
}

CutoffField finish(const MeshSurface& m, std::vector<double> d, double t) {
  CutoffField c;
  c.mesh = &m;
  c.t = t;
  c.values.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c.values[i] = log_cutoff(t, d[i]);
  c.distance = std::move(d);
  return c;
}

struct LinearTriangle {
  double r0, r1, r2;  // sorted corner values
  double area;        // flat area
  double grad2;       // |∇r_h|²
};

LinearTriangle linear_triangle(const MeshSurface& m, const std::vector<double>& d, const mesh::Tri& t) {
  const mesh::Vec4 e1 = m.vertices[t[1]] - m.vertices[t[0]];
  const mesh::Vec4 e2 = m.vertices[t[2]] - m.vertices[t[0]];
  Eigen::Matrix2d g;
  g << e1.dot(e1), e1.dot(e2), e2.dot(e1), e2.dot(e2);
  const Eigen::Vector2d dr(d[t[1]] - d[t[0]], d[t[2]] - d[t[0]]);
  std::array<double, 3> r{d[t[0]], d[t[1]], d[t[2]]};
  std::sort(r.begin(), r.end());
  return {r[0], r[1], r[2], 0.5 * std::sqrt(std::max(g.determinant(), 0.0)), dr.dot(g.inverse() * dr)};
}

// Level-set area density a(λ) = α + βλ on the two monotone pieces of a linear triangle.
struct Piece {
  double lo, hi, alpha, beta;
};

std::array<Piece, 2> density_pieces(const LinearTriangle& lt) {
  std::array<Piece, 2> p{Piece{0, 0, 0, 0}, Piece{0, 0, 0, 0}};
  const double span = lt.r2 - lt.r0;
  if (!(span > 0.0)) return p;
  if (lt.r1 > lt.r0) {
    const double k = 2 * lt.area / (span * (lt.r1 - lt.r0));
    p[0] = {lt.r0, lt.r1, -k * lt.r0, k};
  }
  if (lt.r2 > lt.r1) {
    const double k = 2 * lt.area / (span * (lt.r2 - lt.r1));
    p[1] = {lt.r1, lt.r2, k * lt.r2, -k};
  }
  return p;
}

}  // namespace

CutoffField build_cutoff(const MeshSurface& m, int p, double t) {
  check_t(t);
  auto d = mesh::geodesic_distance(m, {{p, 0.0}});
  if (sublevel_euler(m, d, t) != 1) throw RadiusTooLarge("build_cutoff: B_t is not an embedded disk");
  // A ball reaching the mesh boundary is not a disk inside the surface either.
  for (const auto& e : mesh::boundary_edges(m))
    if (d[e[0]] < t || d[e[1]] < t) throw RadiusTooLarge("build_cutoff: B_t reaches the mesh boundary");
  return finish(m, std::move(d), t);
}

CutoffField build_cutoff_punctured(const MeshSurface& m, const std::vector<std::vector<int>>& rings,
                                   double ring_distance, double t) {
  check_t(t);
  if (!(ring_distance <= t * t * (1.0 + 1e-12)))
    throw DomainError("build_cutoff_punctured: holes must lie inside B_{t^2}");
  std::vector<std::pair<int, double>> seeds;
  for (const auto& ring : rings)
    for (int v : ring) seeds.push_back({v, ring_distance});
  auto d = mesh::geodesic_distance(m, seeds);
  if (sublevel_euler(m, d, t) != 0) throw RadiusTooLarge("build_cutoff_punctured: B_t minus the hole is not an annulus");
  // Only hole edges may be boundary edges inside B_t.
  std::unordered_map<int, char> on_ring;
  for (const auto& ring : rings)
    for (int v : ring) on_ring[v] = 1;
  for (const auto& e : mesh::boundary_edges(m))
    if ((d[e[0]] < t || d[e[1]] < t) && !(on_ring.count(e[0]) && on_ring.count(e[1])))
      throw RadiusTooLarge("build_cutoff_punctured: B_t reaches the mesh boundary");
  return finish(m, std::move(d), t);
}

double cutoff_energy(const CutoffField& c) {
  if (!c.mesh) throw DomainError("cutoff_energy: field has no mesh");
  const double lo = c.t * c.t, hi = c.t;
  const double log2t = std::pow(std::log(c.t), 2);
  std::vector<double> per(c.mesh->triangles.size(), 0.0);
  parallel_for(per.size(), [&](std::size_t k) {
    const auto lt = linear_triangle(*c.mesh, c.distance, c.mesh->triangles[k]);
    double e = 0.0;
    for (const auto& p : density_pieces(lt)) {
      const double a = std::max(p.lo, lo), b = std::min(p.hi, hi);
      if (!(b > a)) continue;
      // ∫ (α + βλ)/λ² dλ
      e += p.alpha * (1.0 / a - 1.0 / b) + p.beta * std::log(b / a);
    }
    per[k] = lt.grad2 * e / log2t;
  });
  return compensated_sum(per);
}

double level_perimeter(const CutoffField& c, double lambda) {
  CompensatedSum sum;
  for (const auto& tri : c.mesh->triangles) {
    const auto lt = linear_triangle(*c.mesh, c.distance, tri);
    for (const auto& p : density_pieces(lt))
      if (lambda >= p.lo && lambda < p.hi) sum.add((p.alpha + p.beta * lambda) * std::sqrt(lt.grad2));
  }
  return sum.value();
}

PerimeterFit fit_perimeter_constant(const CutoffField& c, int samples) {
  if (samples < 2) throw DomainError("fit_perimeter_constant: need at least two samples");
  PerimeterFit fit;
  const double lo = c.t * c.t;
  fit.lambda = geometric_grid(lo, std::pow(c.t / lo, 1.0 / (samples - 1)), static_cast<std::size_t>(samples));
  fit.perimeter.resize(fit.lambda.size());
  parallel_for(fit.lambda.size(), [&](std::size_t k) { fit.perimeter[k] = level_perimeter(c, fit.lambda[k]); });
  for (std::size_t k = 0; k < fit.lambda.size(); ++k) {
    const double ratio = fit.perimeter[k] / fit.lambda[k];
    if (ratio > fit.d_fit) {
      fit.d_fit = ratio;
      fit.argmax_lambda = fit.lambda[k];
    }
  }
  return fit;
}

}  // namespace neckcut::cutoff
