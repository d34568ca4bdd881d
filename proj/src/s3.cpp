#include "neckcut/s3.hpp"

#include <cmath>
#include <numbers>

#include "neckcut/errors.hpp"
#include "neckcut/mesh_builders.hpp"

namespace neckcut::s3 {

namespace {

constexpr double kPi = std::numbers::pi;

void check_m(int m) {
  if (m < 2) throw DomainError("G_m: m must be at least 2");
}

Complex phase(double a) { return std::polar(1.0, a); }

int mod(int a, int m) { return (a % m + m) % m; }

double wrap(double a) { return a - 2 * kPi * std::floor(a / (2 * kPi)); }

}  // namespace

std::vector<GroupElement> group_elements(int m) {
  check_m(m);
  std::vector<GroupElement> out;
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) out.push_back({k, l, s == 1});
  return out;
}

GroupElement compose(int m, const GroupElement& a, const GroupElement& b) {
  // rot_a ∘ τ = τ ∘ rot_{swap(a)}
  const int ak = b.swap ? a.l : a.k;
  const int al = b.swap ? a.k : a.l;
  return {mod(ak + b.k, m), mod(al + b.l, m), a.swap != b.swap};
}

S3Point apply(int m, const GroupElement& g, const S3Point& x) {
  const S3Point r{phase(2 * kPi * g.k / m) * x.z, phase(2 * kPi * g.l / m) * x.w};
  return g.swap ? S3Point{r.w, r.z} : r;
}

mesh::Vec4 apply(int m, const GroupElement& g, const mesh::Vec4& x) {
  return apply(m, g, S3Point::from_vec(x)).vec();
}

Orbit group_orbit(int m, const S3Point& x) {
  Orbit o;
  for (const auto& g : group_elements(m)) {
    const S3Point y = apply(m, g, x);
    bool seen = false;
    for (const auto& p : o.points)
      if ((p.vec() - y.vec()).norm() <= 1e-9) {
        seen = true;
        break;
      }
    if (!seen) o.points.push_back(y);
  }
  o.isotropy = 2 * m * m / static_cast<int>(o.points.size());
  return o;
}

std::vector<S3Point> clifford_centres(int m) {
  check_m(m);
  std::vector<S3Point> out;
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      out.push_back({phase(kPi / m + 2 * kPi * k / m) / std::sqrt(2.0), phase(kPi / m + 2 * kPi * l / m) / std::sqrt(2.0)});
  return out;
}

double cmc_area(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("cmc_area: t must lie in [0, 1]");
  return 4 * kPi * kPi * std::sqrt(t * (1 - t));
}

mesh::MeshSurface cmc_slice_mesh(double t, int n) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("cmc_slice_mesh: Γ_t is a circle at t = 0, 1");
  return mesh::parallel_torus_grid(std::acos(std::sqrt(t)), n, n);
}

S3Point neck_curve(double t, int m) {
  check_m(m);
  if (!(t >= 0.0 && t <= 0.5)) throw DomainError("neck_curve: t must lie in [0, 1/2]");
  const Complex e = phase(kPi / m);
  return {std::sqrt(1 - t) * e, std::sqrt(t) * e};
}

double neck_length(double t) {
  if (!(t >= 0.0 && t <= 0.5)) throw DomainError("neck_length: t must lie in [0, 1/2]");
  return kPi / 4 - std::asin(std::sqrt(t));
}

mesh::ParamSurface neck_tube_surface(int m, double radius) {
  check_m(m);
  if (!(radius > 0.0 && radius < kPi / 2)) throw RadiusTooLarge("neck tube: radius must lie in (0, pi/2)");
  const Complex e = phase(kPi / m);
  const Complex ie = Complex(0, 1) * e;
  const double c = std::cos(radius), s = std::sin(radius);
  mesh::ParamSurface p;
  p.ambient = mesh::Ambient::round_s3;
  p.point = [=](double beta, double psi) {
    return S3Point{e * (c * std::cos(beta)) + ie * (s * std::cos(psi)), e * (c * std::sin(beta)) + ie * (s * std::sin(psi))}
        .vec();
  };
  p.normal = [=](double beta, double psi) {
    return S3Point{e * (-s * std::cos(beta)) + ie * (c * std::cos(psi)), e * (-s * std::sin(beta)) + ie * (c * std::sin(psi))}
        .vec();
  };
  p.period_v = 2 * kPi;
  p.normal_radius = radius;
  return p;
}

double tube_area(double t, double radius, int n_beta, int n_psi) {
  const double b0 = std::asin(std::sqrt(t));
  const double b1 = kPi / 4;
  const auto surf = neck_tube_surface(2, radius);
  if (!(t < 0.5)) return 0.0;
  if (n_beta < 1 || n_psi < 3) throw DomainError("tube_area: bad resolution");
  std::vector<mesh::UV> uv;
  for (int i = 0; i <= n_beta; ++i)
    for (int j = 0; j < n_psi; ++j) uv.push_back({b0 + (b1 - b0) * i / n_beta, 2 * kPi * j / n_psi});
  std::vector<mesh::Tri> tris;
  const auto id = [&](int i, int j) { return i * n_psi + mod(j, n_psi); };
  for (int i = 0; i < n_beta; ++i)
    for (int j = 0; j < n_psi; ++j) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return mesh::total_area(mesh::realize(surf, uv, tris));
}

mesh::UV grid_retraction(int m, double s, const mesh::UV& tp) {
  check_m(m);
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("grid_retraction: s must lie in [0, 1]");
  const double side = 2 * kPi / m;
  const double w = side / 2;
  const double th = wrap(tp[0]), ph = wrap(tp[1]);
  const double ct = (std::floor(th / side) + 0.5) * side;
  const double cp = (std::floor(ph / side) + 0.5) * side;
  const double vt = th - ct, vp = ph - cp;
  const double rho = std::max(std::abs(vt), std::abs(vp));
  if (!(rho > 0.0)) throw DomainError("grid_retraction: square centres are removed");
  const double scale = ((1 - s) * rho + s * w) / rho;
  return {wrap(ct + scale * vt), wrap(cp + scale * vp)};
}

S3Point grid_retraction(int m, double s, const S3Point& x) {
  if (std::abs(std::norm(x.z) - 0.5) > 1e-9 || std::abs(std::norm(x.w) - 0.5) > 1e-9)
    throw DomainError("grid_retraction: point is not on the Clifford torus");
  const auto r = grid_retraction(m, s, mesh::UV{std::arg(x.z), std::arg(x.w)});
  return {phase(r[0]) / std::sqrt(2.0), phase(r[1]) / std::sqrt(2.0)};
}

}  // namespace neckcut::s3
