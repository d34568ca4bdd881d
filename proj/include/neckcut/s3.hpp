#pragma once

#include <complex>
#include <vector>

#include "neckcut/mesh.hpp"

namespace neckcut::s3 {

using Complex = std::complex<double>;

struct S3Point {
  Complex z;
  Complex w;

  mesh::Vec4 vec() const { return {z.real(), z.imag(), w.real(), w.imag()}; }
  static S3Point from_vec(const mesh::Vec4& v) { return {{v[0], v[1]}, {v[2], v[3]}}; }
  bool on_sphere(double tol = 1e-12) const { return std::abs(std::norm(z) + std::norm(w) - 1.0) <= tol; }
};

/// x ↦ τ^swap(e^{2πik/m}z, e^{2πil/m}w) with τ(z, w) = (w, z).
struct GroupElement {
  int k = 0;
  int l = 0;
  bool swap = false;
};

/// All 2m² elements of G_m.
std::vector<GroupElement> group_elements(int m);
/// a∘b: apply b first.
GroupElement compose(int m, const GroupElement& a, const GroupElement& b);
S3Point apply(int m, const GroupElement& g, const S3Point& x);
mesh::Vec4 apply(int m, const GroupElement& g, const mesh::Vec4& x);

struct Orbit {
  std::vector<S3Point> points;
  int isotropy = 1;  ///< 2m²/|orbit|
};

/// Orbit with coincident images merged at 1e-9.
Orbit group_orbit(int m, const S3Point& x);

/// Grid centres (e^{iθ}, e^{iφ})/√2 with θ, φ ≡ π/m mod 2π/m.
std::vector<S3Point> clifford_centres(int m);

/// |Γ_t| for Γ_t = {|z|² = t}: 4π²·sqrt(t(1 − t)).
double cmc_area(double t);
/// Γ_t meshed as the product torus with cos a = √t. DomainError for t ∉ (0, 1).
mesh::MeshSurface cmc_slice_mesh(double t, int n);

/// α(t) = (√(1−t)·e^{iπ/m}, √t·e^{iπ/m}), t ∈ [0, 1/2].
S3Point neck_curve(double t, int m);
/// Length of α([t, 1/2]); α is a unit-speed great circle in β = arcsin √t.
double neck_length(double t);

/// Boundary of the geodesic tube of radius ε about the great circle through α, as a function
/// of (β, ψ): cos ε·e(cos β, sin β) + sin ε·(ie·cos ψ, ie·sin ψ) with e = e^{iπ/m}.
mesh::ParamSurface neck_tube_surface(int m, double radius);

/// Mesh area of the tube boundary about α([t, 1/2]). RadiusTooLarge unless 0 < radius < π/2.
double tube_area(double t, double radius, int n_beta = 64, int n_psi = 64);

/// Sup-norm radial retraction of each grid square onto its boundary lines, acting on
/// Clifford torus coordinates (θ, φ). Square centres are excluded.
mesh::UV grid_retraction(int m, double s, const mesh::UV& theta_phi);
S3Point grid_retraction(int m, double s, const S3Point& x);

}  // namespace neckcut::s3
