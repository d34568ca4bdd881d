#include "neckcut/mesh_builders.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "neckcut/errors.hpp"

namespace neckcut::mesh {

namespace {

constexpr double kPi = std::numbers::pi;

Vec4 v4(double a, double b, double c, double d) { return Vec4(a, b, c, d); }

std::vector<Tri> periodic_grid_triangles(int nu, int nv, bool wrap_v) {
  std::vector<Tri> tris;
  const int rows = wrap_v ? nv : nv + 1;
  const auto id = [&](int i, int j) { return ((i % nu + nu) % nu) * rows + (wrap_v ? (j % nv + nv) % nv : j); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return tris;
}

}  // namespace

ParamSurface parallel_torus(double a) {
  if (!(a > 0.0 && a < kPi / 2)) throw DomainError("parallel_torus: a must lie in (0, pi/2)");
  ParamSurface s;
  s.ambient = Ambient::round_s3;
  const double ca = std::cos(a), sa = std::sin(a);
  s.point = [=](double th, double ph) {
    return v4(ca * std::cos(th), ca * std::sin(th), sa * std::cos(ph), sa * std::sin(ph));
  };
  s.normal = [=](double th, double ph) {
    return v4(-sa * std::cos(th), -sa * std::sin(th), ca * std::cos(ph), ca * std::sin(ph));
  };
  const double k1 = sa / ca, k2 = -ca / sa;
  s.shape = [=](double th, double ph) {
    const Vec4 tt = v4(-std::sin(th), std::cos(th), 0, 0);
    const Vec4 tp = v4(0, 0, -std::sin(ph), std::cos(ph));
    return Mat4(k1 * tt * tt.transpose() + k2 * tp * tp.transpose());
  };
  s.ric_nn = 2.0;
  s.period_u = s.period_v = 2 * kPi;
  s.normal_radius = std::min(a, kPi / 2 - a);
  return s;
}

ParamSurface catenoid_surface(double c) {
  if (!(c > 0.0)) throw DomainError("catenoid_surface: c must be positive");
  ParamSurface s;
  s.point = [=](double u, double v) {
    const double rad = c * std::cosh(v / c);
    return v4(rad * std::cos(u), rad * std::sin(u), v, 0);
  };
  s.normal = [=](double u, double v) {
    const double ch = std::cosh(v / c);
    return v4(std::cos(u) / ch, std::sin(u) / ch, -std::tanh(v / c), 0);
  };
  s.shape = [=](double u, double v) {
    const double ch = std::cosh(v / c), sh = std::sinh(v / c);
    const double k = 1.0 / (c * ch * ch);
    const Vec4 tu = v4(-std::sin(u), std::cos(u), 0, 0);
    const Vec4 tz = v4(sh * std::cos(u) / ch, sh * std::sin(u) / ch, 1.0 / ch, 0);
    return Mat4(k * (tz * tz.transpose() - tu * tu.transpose()));
  };
  s.period_u = 2 * kPi;
  s.normal_radius = c;
  return s;
}

MeshSurface parallel_torus_grid(double a, int n_theta, int n_phi) {
  if (n_theta < 3 || n_phi < 3) throw DomainError("parallel_torus_grid: need at least 3 cells per direction");
  std::vector<UV> uv;
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) uv.push_back({2 * kPi * i / n_theta, 2 * kPi * j / n_phi});
  return realize(parallel_torus(a), uv, periodic_grid_triangles(n_theta, n_phi, true));
}

MeshSurface clifford_torus_grid(int n) { return parallel_torus_grid(kPi / 4, n, n); }

MeshSurface parallel_torus_band(double a, int n_theta, int n_phi, double phi_span) {
  if (n_theta < 3 || n_phi < 1 || !(phi_span > 0.0 && phi_span < 2 * kPi))
    throw DomainError("parallel_torus_band: bad resolution or span");
  std::vector<UV> uv;
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j <= n_phi; ++j) uv.push_back({2 * kPi * i / n_theta, phi_span * j / n_phi});
  auto s = parallel_torus(a);
  s.period_v = 0.0;
  return realize(s, uv, periodic_grid_triangles(n_theta, n_phi, false));
}

MeshSurface catenoid_patch(double c, double v_max, int n_u, int n_v) {
  if (n_u < 3 || n_v < 1 || !(v_max > 0.0)) throw DomainError("catenoid_patch: bad resolution");
  std::vector<UV> uv;
  for (int i = 0; i < n_u; ++i)
    for (int j = 0; j <= n_v; ++j) uv.push_back({2 * kPi * i / n_u, -v_max + 2 * v_max * j / n_v});
  return realize(catenoid_surface(c), uv, periodic_grid_triangles(n_u, n_v, false));
}

MeshSurface flat_polar_disk(int n_ang, double r_min, double q) {
  if (n_ang < 3 || !(r_min > 0.0 && r_min < 1.0) || !(q > 1.0)) throw DomainError("flat_polar_disk: bad resolution");
  const int rings = static_cast<int>(std::ceil(std::log(1.0 / r_min) / std::log(q))) + 1;
  MeshSurface m;
  m.vertices.push_back(Vec4::Zero());
  m.uv.push_back({0.0, 0.0});
  for (int k = 0; k < rings; ++k) {
    const double rho = r_min * std::pow(1.0 / r_min, static_cast<double>(k) / (rings - 1));
    for (int j = 0; j < n_ang; ++j) {
      const double psi = 2 * kPi * j / n_ang;
      m.vertices.push_back(v4(rho * std::cos(psi), rho * std::sin(psi), 0, 0));
      m.uv.push_back({rho, psi});
    }
  }
  const auto id = [&](int k, int j) { return 1 + k * n_ang + (j % n_ang); };
  for (int j = 0; j < n_ang; ++j) m.triangles.push_back({0, id(0, j), id(0, j + 1)});
  for (int k = 0; k + 1 < rings; ++k)
    for (int j = 0; j < n_ang; ++j) {
      m.triangles.push_back({id(k, j), id(k + 1, j), id(k + 1, j + 1)});
      m.triangles.push_back({id(k, j), id(k + 1, j + 1), id(k, j + 1)});
    }
  m.normals.assign(m.vertices.size(), v4(0, 0, 1, 0));
  m.shape.assign(m.vertices.size(), Mat4::Zero());
  m.a_norm2.assign(m.vertices.size(), 0.0);
  m.ric_nn.assign(m.vertices.size(), 0.0);
  m.analytic_curvature = true;
  return m;
}

MeshSurface icosphere(int subdivisions) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec4> v{v4(-1, p, 0, 0), v4(1, p, 0, 0),   v4(-1, -p, 0, 0), v4(1, -p, 0, 0),
                      v4(0, -1, p, 0), v4(0, 1, p, 0),   v4(0, -1, -p, 0), v4(0, 1, -p, 0),
                      v4(p, 0, -1, 0), v4(p, 0, 1, 0),   v4(-p, 0, -1, 0), v4(-p, 0, 1, 0)};
  for (auto& x : v) x.normalize();
  std::vector<Tri> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                     {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                     {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> cache;
    const auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      cache.emplace(key, id);
      return id;
    };
    std::vector<Tri> g;
    for (const auto& t : f) {
      const int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
      g.push_back({t[0], a, c});
      g.push_back({t[1], b, a});
      g.push_back({t[2], c, b});
      g.push_back({a, b, c});
    }
    f = std::move(g);
  }
  MeshSurface m;
  m.vertices = v;
  m.triangles = f;
  m.normals = v;
  const Mat4 flat = Vec4(1, 1, 1, 0).asDiagonal();
  for (const auto& x : v) {
    m.shape.push_back(-(flat - x * x.transpose()));
    m.a_norm2.push_back(2.0);
    m.ric_nn.push_back(0.0);
  }
  m.analytic_curvature = true;
  m.normal_radius = 1.0;
  for (const auto& t : f) {
    std::array<Vec4, 3> mids;
    for (int k = 0; k < 3; ++k) mids[k] = (v[t[k]] + v[t[(k + 1) % 3]]).normalized();
    m.edge_mid.push_back(mids);
    m.edge_mid_normal.push_back(mids);
  }
  return m;
}

std::vector<double> patch_ring_angles(int segments) {
  std::vector<double> psi;
  const double w = 1.0;
  for (int side = 0; side < 4; ++side)
    for (int k = 0; k < segments; ++k) {
      const double s = 2.0 * w * k / segments;
      double x = 0, y = 0;
      switch (side) {
        case 0: x = w, y = -w + s; break;
        case 1: x = w - s, y = w; break;
        case 2: x = -w, y = w - s; break;
        default: x = -w + s, y = -w; break;
      }
      psi.push_back(std::atan2(y, x));
    }
  return psi;
}

std::function<UV(double)> metric_circle(double a, double rho) {
  const double ca = std::cos(a), sa = std::sin(a);
  return [=](double psi) { return UV{rho * std::cos(psi) / ca, rho * std::sin(psi) / sa}; };
}

PatchMesh patch_torus_layout(const PatchLayout& layout) {
  const int P = layout.patches, S = layout.segments;
  if (P < 1 || S < 2) throw DomainError("patch_torus_layout: need patches >= 1 and segments >= 2");
  if (!(layout.ring_ratio > 1.0)) throw DomainError("patch_torus_layout: ring_ratio must exceed 1");
  const int L = P * S;
  const double step = 2 * kPi / L;
  const double w = kPi / P;
  PatchMesh out;
  out.ring_psi = patch_ring_angles(S);
  std::map<std::pair<int, int>, int> lattice;
  const auto lattice_vertex = [&](int I, int J) {
    I = (I % L + L) % L;
    J = (J % L + L) % L;
    auto it = lattice.find({I, J});
    if (it != lattice.end()) return it->second;
    const int id = static_cast<int>(out.uv.size());
    out.uv.push_back({I * step, J * step});
    lattice.emplace(std::make_pair(I, J), id);
    return id;
  };
  std::map<std::pair<int, int>, const PatchHole*> holes;
  for (const auto& h : layout.holes) {
    if (h.patch_i < 0 || h.patch_i >= P || h.patch_j < 0 || h.patch_j >= P)
      throw DomainError("patch_torus_layout: hole patch index out of range");
    if (!holes.emplace(std::make_pair(h.patch_i, h.patch_j), &h).second)
      throw DomainError("patch_torus_layout: two holes in one patch");
  }
  // Hole outputs follow the order of layout.holes.
  out.hole_rings.resize(layout.holes.size());
  out.centres.assign(layout.holes.size(), -1);

  for (int pi = 0; pi < P; ++pi)
    for (int pj = 0; pj < P; ++pj) {
      const int I0 = pi * S, J0 = pj * S;
      auto hit = holes.find({pi, pj});
      if (hit == holes.end()) {
        for (int a = 0; a < S; ++a)
          for (int b = 0; b < S; ++b) {
            const int v00 = lattice_vertex(I0 + a, J0 + b), v10 = lattice_vertex(I0 + a + 1, J0 + b);
            const int v01 = lattice_vertex(I0 + a, J0 + b + 1), v11 = lattice_vertex(I0 + a + 1, J0 + b + 1);
            out.triangles.push_back({v00, v10, v11});
            out.triangles.push_back({v00, v11, v01});
          }
        continue;
      }
      const PatchHole& hole = *hit->second;
      const std::size_t hole_index = static_cast<std::size_t>(hit->second - layout.holes.data());
      const UV centre{(pi + 0.5) * 2 * w, (pj + 0.5) * 2 * w};
      std::vector<int> outer;
      std::vector<UV> u;
      for (int side = 0; side < 4; ++side)
        for (int k = 0; k < S; ++k) {
          int I = 0, J = 0;
          switch (side) {
            case 0: I = I0 + S, J = J0 + k; break;
            case 1: I = I0 + S - k, J = J0 + S; break;
            case 2: I = I0, J = J0 + S - k; break;
            default: I = I0 + k, J = J0; break;
          }
          outer.push_back(lattice_vertex(I, J));
          u.push_back({(I - I0) * step - w, (J - J0) * step - w});
        }
      const std::size_t n = outer.size();
      std::vector<UV> inner(n);
      double rho0 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        inner[j] = hole.curve(out.ring_psi[j]);
        rho0 = std::max(rho0, std::hypot(inner[j][0], inner[j][1]));
      }
      if (!(rho0 < 0.9 * w)) throw RadiusTooLarge("patch_torus_layout: hole curve reaches the patch boundary");
      const int K = std::max(1, static_cast<int>(std::ceil(std::log(w / rho0) / std::log(layout.ring_ratio))));
      std::vector<std::vector<int>> rings(K + 1);
      for (int k = 0; k < K; ++k) {
        const double rk = rho0 * std::pow(w / rho0, static_cast<double>(k) / K);
        const double sigma = (rk - rho0) / (w - rho0);
        for (std::size_t j = 0; j < n; ++j) {
          const double s = rk / rho0 * (1.0 - sigma);
          rings[k].push_back(static_cast<int>(out.uv.size()));
          out.uv.push_back({centre[0] + s * inner[j][0] + sigma * u[j][0], centre[1] + s * inner[j][1] + sigma * u[j][1]});
        }
      }
      rings[K] = outer;
      for (int k = 0; k < K; ++k)
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t jn = (j + 1) % n;
          const int a = rings[k][j], b = rings[k][jn], c = rings[k + 1][jn], d = rings[k + 1][j];
          out.triangles.push_back({a, c, b});
          out.triangles.push_back({a, d, c});
        }
      out.hole_rings[hole_index] = rings[0];
      if (hole.fill_centre) {
        const int c = static_cast<int>(out.uv.size());
        out.uv.push_back(centre);
        for (std::size_t j = 0; j < n; ++j) out.triangles.push_back({c, rings[0][j], rings[0][(j + 1) % n]});
        out.centres[hole_index] = c;
      }
    }
  return out;
}

}  // namespace neckcut::mesh
