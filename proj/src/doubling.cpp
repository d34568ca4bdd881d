#include "neckcut/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "neckcut/cutoff.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/mesh_builders.hpp"
#include "neckcut/numeric.hpp"
#include "neckcut/s3.hpp"
#include "neckcut/tube_family.hpp"

namespace neckcut::s3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPhaseTol = 1e-12;

using mesh::MeshSurface;
using mesh::UV;
using mesh::Vec4;

double eta_raw(const NeckSchedule& s, double t) {
  const double T = s.closing();
  if (t <= 0.0 || t >= T) return 0.0;
  return s.epsilon * std::sin(kPi * t / T);
}

// Γ_T = T_{π/4 + h} and τ(Γ_T) = T_{π/4 − h}.
double closing_offset(const NeckSchedule& s) { return std::acos(std::sqrt(s.closing())) - kPi / 4; }

MeshSurface map_points(const MeshSurface& m, int order, const GroupElement& g) {
  MeshSurface out;
  out.ambient = m.ambient;
  out.triangles = m.triangles;
  out.normal_radius = m.normal_radius;
  for (const auto& v : m.vertices) out.vertices.push_back(apply(order, g, v));
  for (const auto& v : m.normals) out.normals.push_back(apply(order, g, v));
  for (const auto& e : m.edge_mid) out.edge_mid.push_back({apply(order, g, e[0]), apply(order, g, e[1]), apply(order, g, e[2])});
  for (const auto& e : m.edge_mid_normal)
    out.edge_mid_normal.push_back({apply(order, g, e[0]), apply(order, g, e[1]), apply(order, g, e[2])});
  return out;
}

mesh::PatchLayout all_holes(int m, const DoublingResolution& res, const std::function<UV(double)>& curve) {
  mesh::PatchLayout layout;
  layout.patches = m;
  layout.segments = res.segments;
  layout.ring_ratio = res.ring_ratio;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) layout.holes.push_back({i, j, curve, false});
  return layout;
}

std::vector<MeshSurface> with_tau(const MeshSurface& sheet, int m) {
  return {sheet, map_points(sheet, m, {0, 0, true})};
}

MeshSurface merge_parts(const std::vector<MeshSurface>& parts) {
  std::vector<const MeshSurface*> ptr;
  for (const auto& p : parts) ptr.push_back(&p);
  return mesh::merge(ptr);
}

// Γ_t and τ(Γ_t) joined by m² tubes about the orbit of the arc α ∪ τα.
void necks(int m, const NeckSchedule& sched, const DoublingResolution& res, bool with_mesh, DoubledSlice& out) {
  const double t = out.t;
  const double eta = sched.eta(t);
  const double se = std::sin(eta), ce = std::cos(eta);
  if (!(se * se < t)) throw RadiusTooLarge("doubling: neck radius too large for the torus Γ_t");
  // The tube meets Γ_t = {|z|² = t} at β_end and τ(Γ_t) at β_start.
  const auto beta_end = [&](double psi) {
    return std::acos(std::sqrt((t - se * se * std::cos(psi) * std::cos(psi)) / (ce * ce)));
  };
  const auto beta_start = [&](double psi) {
    return std::asin(std::sqrt((t - se * se * std::sin(psi) * std::sin(psi)) / (ce * ce)));
  };
  const auto psi = mesh::patch_ring_angles(res.segments);
  double beta_min = kPi;
  for (double p : psi) {
    if (!(beta_start(p) < beta_end(p))) throw RadiusTooLarge("doubling: tube ends overlap");
    beta_min = std::min(beta_min, beta_start(p));
  }
  // Arcs through neighbouring centres are sin β·|e^{2πi/m} − 1| apart.
  if (!(eta < std::sin(kPi / m) * std::sin(beta_min)))
    throw RadiusTooLarge("doubling: neighbouring neck tubes intersect");

  const auto curve = [&](double p) {
    const double be = beta_end(p);
    return UV{std::atan2(se * std::cos(p), ce * std::cos(be)), std::atan2(se * std::sin(p), ce * std::sin(be))};
  };
  const auto pm = mesh::patch_torus_layout(all_holes(m, res, curve));
  const auto gamma = mesh::realize(mesh::parallel_torus(std::acos(std::sqrt(t))), pm.uv, pm.triangles);

  const int n = res.tube_rings, np = static_cast<int>(psi.size());
  std::vector<UV> uv;
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j < np; ++j) {
      const double b0 = beta_start(psi[j]), b1 = beta_end(psi[j]);
      uv.push_back({b0 + (b1 - b0) * k / n, psi[j]});
    }
  std::vector<mesh::Tri> tris;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < np; ++j) {
      const int a = k * np + j, b = k * np + (j + 1) % np;
      tris.push_back({a, b, b + np});
      tris.push_back({a, b + np, a + np});
    }
  const auto tube = mesh::realize(neck_tube_surface(m, eta), uv, tris);

  const double sheet = mesh::total_area(gamma);
  const double tubes = m * m * mesh::total_area(tube);
  out.phase = "necks";
  out.area = 2 * sheet + tubes;
  out.components = {{"sheets", 2 * sheet}, {"tubes", tubes}, {"removed", 2 * (cmc_area(t) - sheet)}, {"eta", eta}};
  if (!with_mesh) return;
  auto parts = with_tau(gamma, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) parts.push_back(map_points(tube, m, {k, l, false}));
  out.mesh = merge_parts(parts);
}

// Graph of h·η_r over the Clifford torus punctured at the centres, with its τ image.
// `s` > 0 moves the base points by the grid retraction and scales h by (1 − s)².
void clifford_graphs(int m, const NeckSchedule& sched, const DoublingResolution& res, double r, double s,
                     bool with_mesh, DoubledSlice& out) {
  const auto torus = mesh::parallel_torus(kPi / 4);
  const auto pm = mesh::patch_torus_layout(all_holes(m, res, mesh::metric_circle(kPi / 4, r * r)));
  auto base = mesh::realize(torus, pm.uv, pm.triangles);
  const auto eta = cutoff::build_cutoff_punctured(base, pm.hole_rings, r * r, r).values;
  if (s > 0.0) {
    const auto move = [&](const UV& p, Vec4& x, Vec4& nrm) {
      const UV q = grid_retraction(m, s, p);
      x = torus.point(q[0], q[1]);
      nrm = torus.normal(q[0], q[1]);
    };
    for (std::size_t i = 0; i < base.vertices.size(); ++i) move(base.uv[i], base.vertices[i], base.normals[i]);
    for (std::size_t k = 0; k < base.triangles.size(); ++k)
      for (int e = 0; e < 3; ++e) move(base.edge_mid_uv[k][e], base.edge_mid[k][e], base.edge_mid_normal[k][e]);
  }
  const double h = closing_offset(sched) * (1 - s) * (1 - s);
  std::vector<double> offset(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) offset[i] = h * eta[i];
  std::vector<std::array<double, 3>> mid(base.triangles.size());
  for (std::size_t k = 0; k < base.triangles.size(); ++k)
    for (int e = 0; e < 3; ++e) mid[k][e] = 0.5 * (offset[base.triangles[k][e]] + offset[base.triangles[k][(e + 1) % 3]]);
  const auto upper = mesh::push_along_normals(base, offset, &mid);
  const double a = mesh::total_area(upper);
  out.area = 2 * a;
  out.components = {{"upper", a}, {"lower", a}, {"cutoff_radius", r}, {"offset", h}};
  if (with_mesh) out.mesh = merge_parts(with_tau(upper, m));
}

}  // namespace

double NeckSchedule::eta(double t) const {
  if (!(t >= 0.0 && t <= 0.5)) throw DomainError("NeckSchedule: t must lie in [0, 1/2]");
  return eta_raw(*this, t);
}

void NeckSchedule::validate() const {
  if (!(epsilon > 0.0 && epsilon < kPi / 4)) throw DomainError("NeckSchedule: epsilon must lie in (0, pi/4)");
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("NeckSchedule: delta must lie in (0, 1/2)");
  if (!(cutoff_radius > 0.0 && cutoff_radius < 1.0)) throw DomainError("NeckSchedule: cutoff_radius must lie in (0, 1)");
}

DoubledSlice assemble_slice(int m, const NeckSchedule& sched, double t, bool with_mesh, const DoublingResolution& res) {
  if (m < 2) throw DomainError("doubling: m must be at least 2");
  sched.validate();
  if (!(t >= 0.0 && t <= 0.5)) throw DomainError("doubling: t must lie in [0, 1/2]");
  const double T = sched.closing();
  const double half = sched.delta / 2;
  DoubledSlice out;
  out.t = t;
  if (t <= kPhaseTol || t >= 0.5 - kPhaseTol) {
    // Two circles at t = 0 and the grid 𝒢 counted twice at t = 1/2.
    out.phase = t <= kPhaseTol ? "circles" : "grid";
    out.regular = false;
  } else if (std::abs(t - T) <= kPhaseTol) {
    out.phase = "tori";
    out.regular = false;
    const auto gamma = mesh::parallel_torus_grid(std::acos(std::sqrt(T)), 8 * m * res.segments, 8 * m * res.segments);
    out.area = 2 * mesh::total_area(gamma);
    out.components = {{"sheets", out.area}};
    if (with_mesh) out.mesh = merge_parts(with_tau(gamma, m));
  } else if (t < T) {
    necks(m, sched, res, with_mesh, out);
  } else if (t <= T + half + kPhaseTol) {
    out.phase = "opening";
    clifford_graphs(m, sched, res, sched.cutoff_radius * std::min(1.0, (t - T) / half), 0.0, with_mesh, out);
  } else {
    out.phase = "retracting";
    clifford_graphs(m, sched, res, sched.cutoff_radius, (t - T - half) / half, with_mesh, out);
  }
  return out;
}

std::vector<double> default_doubling_t_grid(const NeckSchedule& sched) {
  const double T = sched.closing();
  const double half = sched.delta / 2;
  std::vector<double> t = linear_grid(0.0, T, 46);
  for (int k = 1; k <= 20; ++k) t.push_back(T + half * k / 20.0);
  for (int k = 1; k <= 10; ++k) t.push_back(T + half + half * k / 10.0);
  return t;
}

EquivarianceCheck check_equivariance(const mesh::MeshSurface& m, int order, double tol) {
  mesh::PositionIndex index(tol);
  for (const auto& v : m.vertices) index.insert(v);
  const auto sorted = [](mesh::Tri t) {
    std::sort(t.begin(), t.end());
    return t;
  };
  std::set<mesh::Tri> tris;
  for (const auto& t : m.triangles) tris.insert(sorted(t));
  EquivarianceCheck c;
  for (const auto& g : group_elements(order)) {
    ++c.elements;
    std::vector<int> image(m.vertices.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      image[i] = index.find(apply(order, g, m.vertices[i]));
      if (image[i] < 0) ++c.unmatched_vertices;
    }
    for (const auto& t : m.triangles) {
      const mesh::Tri q{image[t[0]], image[t[1]], image[t[2]]};
      if (q[0] < 0 || q[1] < 0 || q[2] < 0 || !tris.count(sorted(q))) ++c.unmatched_triangles;
    }
  }
  return c;
}

SweepoutReport assemble_doubled_sweepout(int m, const NeckSchedule& sched, const std::vector<double>& t_grid,
                                         const DoublingResolution& res) {
  if (m < 2) throw DomainError("doubling: m must be at least 2");
  sched.validate();
  if (t_grid.empty()) throw DomainError("doubling: empty t grid");
  for (double t : t_grid)
    if (!(t >= 0.0 && t <= 0.5)) throw DomainError("doubling: t must lie in [0, 1/2]");
  const double T = sched.closing();
  const double half = sched.delta / 2;
  const double h = closing_offset(sched);

  SweepoutReport rep;
  rep.command = "doubling sweep";
  rep.config = {{"m", m},
                {"epsilon", sched.epsilon},
                {"delta", sched.delta},
                {"cutoff_radius", sched.cutoff_radius},
                {"segments", res.segments},
                {"ring_ratio", res.ring_ratio},
                {"tube_rings", res.tube_rings},
                {"t_grid", t_grid}};

  // The opening phase is the two-sided tube family over the Clifford torus.
  std::vector<double> opening_t, opening_r, other_t;
  for (double t : t_grid) {
    if (t > T + kPhaseTol && t <= T + half + kPhaseTol) {
      opening_t.push_back(t);
      opening_r.push_back(sched.cutoff_radius * std::min(1.0, (t - T) / half));
    } else {
      other_t.push_back(t);
    }
  }
  if (!opening_t.empty()) {
    fermi::TubeFamilyConfig cfg;
    cfg.a = kPi / 4;
    cfg.patches = m;
    cfg.segments = res.segments;
    cfg.ring_ratio = res.ring_ratio;
    cfg.h = h;
    cfg.punctures.clear();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) cfg.punctures.push_back({i, j});
    cfg.t_grid = opening_r;
    const auto fam = fermi::two_sided_tube_family(cfg);
    // Rows come back sorted by the cutoff radius, which is increasing in t.
    for (std::size_t k = 0; k < fam.rows.size(); ++k) {
      auto row = fam.rows[k];
      row.components.emplace_back("cutoff_radius", row.t);
      row.t = opening_t[k];
      row.phase = "opening";
      rep.rows.push_back(row);
    }
  }
  std::vector<DoubledSlice> slices(other_t.size());
  parallel_for(slices.size(), [&](std::size_t k) { slices[k] = assemble_slice(m, sched, other_t[k], false, res); });
  for (const auto& s : slices) rep.rows.push_back({s.t, s.area, s.phase, s.components});

  // Structural checks on one slice of each phase with a surface.
  const std::vector<double> samples{T / 2, T + half / 2, T + 1.5 * half};
  std::vector<DoubledSlice> checked(samples.size());
  parallel_for(checked.size(), [&](std::size_t k) { checked[k] = assemble_slice(m, sched, samples[k], true, res); });
  int unmatched = 0;
  for (const auto& s : checked) {
    rep.metrics.emplace_back("euler_" + s.phase, mesh::euler_characteristic(s.mesh));
    const auto eq = check_equivariance(s.mesh, m);
    unmatched += eq.unmatched_vertices + eq.unmatched_triangles;
  }

  const double budget = 4 * kPi * kPi;
  rep.finalize(budget);
  double jump = 0.0;
  for (std::size_t k = 1; k < rep.rows.size(); ++k) jump = std::max(jump, std::abs(rep.rows[k].area - rep.rows[k - 1].area));
  rep.metrics.emplace_back("euler_expected", 2.0 - 2.0 * (m * m + 1));
  rep.metrics.emplace_back("equivariance_unmatched", unmatched);
  rep.metrics.emplace_back("margin_fraction", rep.summary.margin / budget);
  rep.metrics.emplace_back("max_area_jump", jump);
  rep.metrics.emplace_back("closing_offset", h);
  rep.metrics.emplace_back("closing_area_closed_form", 2 * cmc_area(T));
  rep.notes.push_back("non-regular slice at t = 1/2 - delta where the necks close; t = 0 and t = 1/2 are one-dimensional");
  rep.notes.push_back("slice areas are of the piecewise smooth surfaces, without the smoothing perturbation");
  rep.metrics.emplace_back("non_regular_t", T);
  if (!rep.summary.pass)
    throw BudgetViolated("doubling: slice area " + format_double(rep.summary.sup_area) + " at t = " +
                         format_double(rep.summary.argsup_t) + " reaches 4pi^2");
  return rep;
}

}  // namespace neckcut::s3
