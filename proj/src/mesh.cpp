#include "neckcut/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "neckcut/errors.hpp"
#include "neckcut/numeric.hpp"
#include "neckcut/report.hpp"

namespace neckcut::mesh {

std::string to_string(Ambient a) { return a == Ambient::round_s3 ? "round_s3" : "euclidean_r3"; }

Ambient ambient_from_string(const std::string& s) {
  if (s == "round_s3") return Ambient::round_s3;
  if (s == "euclidean_r3") return Ambient::euclidean_r3;
  throw DomainError("unknown ambient tag: " + s);
}

void MeshSurface::validate() const {
  const int n = static_cast<int>(vertices.size());
  for (const auto& t : triangles) {
    for (int k : t)
      if (k < 0 || k >= n) throw DomainError("mesh: triangle index out of range");
    if (!(flat_triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]) > 0.0))
      throw DomainError("mesh: triangle with zero area");
  }
  if (!normals.empty()) {
    if (normals.size() != vertices.size()) throw DomainError("mesh: normal count mismatch");
    for (const auto& v : normals)
      if (std::abs(v.norm() - 1.0) > 1e-10) throw DomainError("mesh: normal not unit");
  }
  for (const auto& v : vertices) {
    if (ambient == Ambient::round_s3 && std::abs(v.squaredNorm() - 1.0) > 1e-12)
      throw DomainError("mesh: vertex off the unit sphere");
    if (ambient == Ambient::euclidean_r3 && v[3] != 0.0) throw DomainError("mesh: R3 vertex with w != 0");
  }
}

namespace {

double wrap(double d, double period) {
  if (period <= 0.0) return d;
  return d - period * std::round(d / period);
}

}  // namespace

MeshSurface realize(const ParamSurface& s, const std::vector<UV>& uv, const std::vector<Tri>& tris) {
  MeshSurface m;
  m.ambient = s.ambient;
  m.normal_radius = s.normal_radius;
  m.uv = uv;
  m.triangles = tris;
  const bool with_shape = static_cast<bool>(s.shape);
  for (const auto& p : uv) {
    m.vertices.push_back(s.point(p[0], p[1]));
    m.normals.push_back(s.normal(p[0], p[1]).normalized());
    if (with_shape) {
      const Mat4 a = s.shape(p[0], p[1]);
      m.shape.push_back(a);
      m.a_norm2.push_back(a.squaredNorm());
      m.ric_nn.push_back(s.ric_nn);
    }
  }
  m.analytic_curvature = with_shape;
  m.edge_mid.resize(tris.size());
  m.edge_mid_normal.resize(tris.size());
  m.edge_mid_uv.resize(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const UV& a = uv[tris[t][k]];
      const UV& b = uv[tris[t][(k + 1) % 3]];
      const UV mid{a[0] + 0.5 * wrap(b[0] - a[0], s.period_u), a[1] + 0.5 * wrap(b[1] - a[1], s.period_v)};
      m.edge_mid_uv[t][k] = mid;
      m.edge_mid[t][k] = s.point(mid[0], mid[1]);
      m.edge_mid_normal[t][k] = s.normal(mid[0], mid[1]).normalized();
    }
  }
  return m;
}

double flat_triangle_area(const Vec4& a, const Vec4& b, const Vec4& c) {
  const Vec4 e1 = b - a;
  const Vec4 e2 = c - a;
  const double g = e1.squaredNorm() * e2.squaredNorm() - std::pow(e1.dot(e2), 2);
  return 0.5 * std::sqrt(std::max(g, 0.0));
}

double quadratic_triangle_area(const Vec4& p0, const Vec4& p1, const Vec4& p2, const Vec4& m01,
                               const Vec4& m12, const Vec4& m20) {
  // Barycentric (L0, L1, L2) with u = L1, v = L2.
  static const double a1 = 0.059715871789770, b1 = 0.470142064105115;
  static const double a2 = 0.797426985353087, b2 = 0.101286507323456;
  static const double w0 = 0.225, w1 = 0.132394152788506, w2 = 0.125939180544827;
  static const std::array<std::array<double, 3>, 7> pts{{{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                                          {a1, b1, b1},
                                                          {b1, a1, b1},
                                                          {b1, b1, a1},
                                                          {a2, b2, b2},
                                                          {b2, a2, b2},
                                                          {b2, b2, a2}}};
  static const std::array<double, 7> wts{w0, w1, w1, w1, w2, w2, w2};
  double area = 0.0;
  for (int q = 0; q < 7; ++q) {
    const double l0 = pts[q][0], l1 = pts[q][1], l2 = pts[q][2];
    // d/du and d/dv of the six quadratic shape functions.
    const Vec4 xu = p0 * (-(4 * l0 - 1)) + p1 * (4 * l1 - 1) + m01 * (4 * (l0 - l1)) + m12 * (4 * l2) +
                    m20 * (-4 * l2);
    const Vec4 xv = p0 * (-(4 * l0 - 1)) + p2 * (4 * l2 - 1) + m01 * (-4 * l1) + m12 * (4 * l1) +
                    m20 * (4 * (l0 - l2));
    const double g = xu.squaredNorm() * xv.squaredNorm() - std::pow(xu.dot(xv), 2);
    area += wts[q] * std::sqrt(std::max(g, 0.0));
  }
  return 0.5 * area;
}

std::vector<double> triangle_areas(const MeshSurface& m) {
  std::vector<double> out(m.triangles.size());
  const bool quad = m.quadratic();
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const Vec4& p0 = m.vertices[tri[0]];
    const Vec4& p1 = m.vertices[tri[1]];
    const Vec4& p2 = m.vertices[tri[2]];
    out[t] = quad ? quadratic_triangle_area(p0, p1, p2, m.edge_mid[t][0], m.edge_mid[t][1], m.edge_mid[t][2])
                  : flat_triangle_area(p0, p1, p2);
  }
  return out;
}

double total_area(const MeshSurface& m) {
  const auto a = triangle_areas(m);
  return compensated_sum(a);
}

Vec4 exp_normal(Ambient a, const Vec4& x, const Vec4& n, double s) {
  if (a == Ambient::round_s3) return std::cos(s) * x + std::sin(s) * n;
  return x + s * n;
}

Vec4 exp_normal_velocity(Ambient a, const Vec4& x, const Vec4& n, double s) {
  if (a == Ambient::round_s3) return -std::sin(s) * x + std::cos(s) * n;
  return n;
}

MeshSurface push_along_normals(const MeshSurface& m, const std::vector<double>& offset,
                               const std::vector<std::array<double, 3>>* mid_offset) {
  if (offset.size() != m.vertices.size()) throw DomainError("push: one offset per vertex expected");
  if (m.normals.size() != m.vertices.size()) throw DomainError("push: mesh has no normals");
  for (double s : offset)
    if (!(std::abs(s) < m.normal_radius)) throw ChartOverflow("push: offset leaves the normal chart");
  MeshSurface out;
  out.ambient = m.ambient;
  out.triangles = m.triangles;
  out.uv = m.uv;
  out.edge_mid_uv = m.edge_mid_uv;
  out.normal_radius = m.normal_radius;
  out.vertices.resize(m.vertices.size());
  out.normals.resize(m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    out.vertices[i] = exp_normal(m.ambient, m.vertices[i], m.normals[i], offset[i]);
    out.normals[i] = exp_normal_velocity(m.ambient, m.vertices[i], m.normals[i], offset[i]);
  }
  if (m.quadratic()) {
    if (mid_offset && mid_offset->size() != m.triangles.size())
      throw DomainError("push: one midpoint offset triple per triangle expected");
    out.edge_mid.resize(m.triangles.size());
    out.edge_mid_normal.resize(m.triangles.size());
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
      for (int k = 0; k < 3; ++k) {
        const double s = mid_offset ? (*mid_offset)[t][k]
                                    : 0.5 * (offset[m.triangles[t][k]] + offset[m.triangles[t][(k + 1) % 3]]);
        if (!(std::abs(s) < m.normal_radius)) throw ChartOverflow("push: offset leaves the normal chart");
        out.edge_mid[t][k] = exp_normal(m.ambient, m.edge_mid[t][k], m.edge_mid_normal[t][k], s);
        out.edge_mid_normal[t][k] = exp_normal_velocity(m.ambient, m.edge_mid[t][k], m.edge_mid_normal[t][k], s);
      }
    }
  }
  return out;
}

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

int euler_characteristic(const MeshSurface& m) {
  std::vector<std::uint64_t> edges;
  edges.reserve(3 * m.triangles.size());
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) edges.push_back(edge_key(t[k], t[(k + 1) % 3]));
  std::sort(edges.begin(), edges.end());
  const auto e = std::unique(edges.begin(), edges.end()) - edges.begin();
  // Only vertices used by some triangle count.
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& t : m.triangles)
    for (int k : t) used[k] = 1;
  const auto v = std::count(used.begin(), used.end(), 1);
  return static_cast<int>(v - e + static_cast<std::ptrdiff_t>(m.triangles.size()));
}

std::vector<std::vector<int>> vertex_neighbors(const MeshSurface& m) {
  std::vector<std::vector<int>> nb(m.vertices.size());
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) {
      nb[t[k]].push_back(t[(k + 1) % 3]);
      nb[t[k]].push_back(t[(k + 2) % 3]);
    }
  for (auto& v : nb) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return nb;
}

std::vector<std::vector<int>> vertex_triangles(const MeshSurface& m) {
  std::vector<std::vector<int>> vt(m.vertices.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    for (int k : m.triangles[t]) vt[k].push_back(static_cast<int>(t));
  return vt;
}

std::vector<std::array<int, 2>> boundary_edges(const MeshSurface& m) {
  std::unordered_map<std::uint64_t, int> count;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++count[edge_key(t[k], t[(k + 1) % 3])];
  std::vector<std::array<int, 2>> out;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k)
      if (count[edge_key(t[k], t[(k + 1) % 3])] == 1) out.push_back({t[k], t[(k + 1) % 3]});
  return out;
}

void finite_difference_curvature(MeshSurface& m) {
  if (m.normals.size() != m.vertices.size()) throw DomainError("curvature: mesh has no normals");
  const auto nb = vertex_neighbors(m);
  const std::size_t n = m.vertices.size();
  m.shape.assign(n, Mat4::Zero());
  m.a_norm2.assign(n, 0.0);
  m.ric_nn.assign(n, m.ambient == Ambient::round_s3 ? 2.0 : 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4& x = m.vertices[i];
    const Vec4& nrm = m.normals[i];
    // Projector onto the tangent plane of the surface at x.
    Mat4 proj = Mat4::Identity() - nrm * nrm.transpose();
    if (m.ambient == Ambient::round_s3) proj -= x * x.transpose() / x.squaredNorm();
    else proj(3, 3) = 0.0;
    Eigen::Matrix<double, 4, 2> basis;
    int found = 0;
    for (int j : nb[i]) {
      Vec4 e = proj * (m.vertices[j] - x);
      for (int k = 0; k < found; ++k) e -= basis.col(k).dot(e) * basis.col(k);
      if (e.norm() > 1e-3 * (m.vertices[j] - x).norm()) basis.col(found++) = e.normalized();
      if (found == 2) break;
    }
    if (found < 2) throw DegenerateProfile("curvature: vertex star spans no tangent plane");
    Eigen::Matrix2d dd = Eigen::Matrix2d::Zero(), nd = Eigen::Matrix2d::Zero();
    for (int j : nb[i]) {
      const Eigen::Vector2d d = basis.transpose() * (m.vertices[j] - x);
      const Eigen::Vector2d dn = basis.transpose() * (m.normals[j] - nrm);
      dd += d * d.transpose();
      nd += dn * d.transpose();
    }
    const Eigen::Matrix2d b = nd * dd.inverse();
    const Eigen::Matrix2d s = -0.5 * (b + b.transpose());
    m.shape[i] = basis * s * basis.transpose();
    m.a_norm2[i] = s.squaredNorm();
  }
  m.analytic_curvature = false;
}

void write_mesh(std::ostream& os, const MeshSurface& m) {
  os << "ambient " << to_string(m.ambient) << '\n';
  for (const auto& v : m.vertices)
    os << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << ' '
       << format_double(v[3]) << '\n';
  for (const auto& v : m.normals)
    os << "n " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << ' '
       << format_double(v[3]) << '\n';
  for (const auto& t : m.triangles) os << "f " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

MeshSurface read_mesh(std::istream& is) {
  MeshSurface m;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "ambient") {
      std::string a;
      ls >> a;
      m.ambient = ambient_from_string(a);
    } else if (tag == "v" || tag == "n") {
      Vec4 v;
      if (!(ls >> v[0] >> v[1] >> v[2] >> v[3])) throw DomainError("mesh: bad line " + std::to_string(lineno));
      (tag == "v" ? m.vertices : m.normals).push_back(v);
    } else if (tag == "f") {
      Tri t;
      if (!(ls >> t[0] >> t[1] >> t[2])) throw DomainError("mesh: bad line " + std::to_string(lineno));
      m.triangles.push_back(t);
    } else {
      throw DomainError("mesh: unknown record on line " + std::to_string(lineno));
    }
  }
  m.validate();
  return m;
}

PositionIndex::Key PositionIndex::key_of(const Vec4& v) const {
  Key k;
  for (int d = 0; d < 4; ++d) k[d] = std::llround(std::floor(v[d] / (4.0 * tol_)));
  return k;
}

int PositionIndex::find(const Vec4& v) const {
  const Key k = key_of(v);
  for (int code = 0; code < 81; ++code) {
    Key q = k;
    int c = code;
    for (int d = 0; d < 4; ++d, c /= 3) q[d] += c % 3 - 1;
    auto it = cells_.find(q);
    if (it == cells_.end()) continue;
    for (int idx : it->second)
      if ((points_[idx] - v).norm() <= tol_) return idx;
  }
  return -1;
}

int PositionIndex::insert(const Vec4& v) {
  const int idx = static_cast<int>(points_.size());
  points_.push_back(v);
  cells_[key_of(v)].push_back(idx);
  return idx;
}

MeshSurface merge(const std::vector<const MeshSurface*>& parts, double tol) {
  if (parts.empty()) return {};
  MeshSurface out;
  out.ambient = parts.front()->ambient;
  out.normal_radius = parts.front()->normal_radius;
  bool quad = true, curv = true, with_uv = true;
  for (const auto* p : parts) {
    quad = quad && p->quadratic();
    curv = curv && p->has_curvature() && p->shape.size() == p->vertices.size();
    with_uv = with_uv && p->uv.size() == p->vertices.size();
    out.normal_radius = std::min(out.normal_radius, p->normal_radius);
  }
  out.analytic_curvature = curv;
  PositionIndex index(tol);
  for (const auto* p : parts) {
    std::vector<int> remap(p->vertices.size());
    for (std::size_t i = 0; i < p->vertices.size(); ++i) {
      int idx = index.find(p->vertices[i]);
      if (idx < 0) {
        idx = index.insert(p->vertices[i]);
        out.vertices.push_back(p->vertices[i]);
        if (!p->normals.empty()) out.normals.push_back(p->normals[i]);
        if (curv) {
          out.shape.push_back(p->shape[i]);
          out.a_norm2.push_back(p->a_norm2[i]);
          out.ric_nn.push_back(p->ric_nn[i]);
        }
        if (with_uv) out.uv.push_back(p->uv[i]);
      }
      remap[i] = idx;
    }
    for (std::size_t t = 0; t < p->triangles.size(); ++t) {
      const auto& tri = p->triangles[t];
      out.triangles.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
      if (quad) {
        out.edge_mid.push_back(p->edge_mid[t]);
        out.edge_mid_normal.push_back(p->edge_mid_normal[t]);
        if (with_uv && p->edge_mid_uv.size() == p->triangles.size()) out.edge_mid_uv.push_back(p->edge_mid_uv[t]);
      }
    }
  }
  if (out.edge_mid_uv.size() != out.triangles.size()) out.edge_mid_uv.clear();
  if (out.normals.size() != out.vertices.size()) out.normals.clear();
  return out;
}

}  // namespace neckcut::mesh
