#include "neckcut/tube_family.hpp"

#include <cmath>

#include "neckcut/cutoff.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/fermi.hpp"
#include "neckcut/mesh_builders.hpp"
#include "neckcut/numeric.hpp"

namespace neckcut::fermi {

std::vector<double> default_tube_t_grid() {
  std::vector<double> t{0.0};
  for (double x : geometric_grid(0.005, std::pow(0.3 / 0.005, 1.0 / 23), 24)) t.push_back(x);
  return t;
}

namespace {

struct SliceArea {
  double upper = 0.0;
  double lower = 0.0;
};

SliceArea slice(const TubeFamilyConfig& cfg, double t) {
  mesh::PatchLayout layout;
  layout.patches = cfg.patches;
  layout.segments = cfg.segments;
  layout.ring_ratio = cfg.ring_ratio;
  if (t > 0.0)
    for (const auto& p : cfg.punctures) layout.holes.push_back({p[0], p[1], mesh::metric_circle(cfg.a, t * t), false});
  const auto pm = mesh::patch_torus_layout(layout);
  const auto base = mesh::realize(mesh::parallel_torus(cfg.a), pm.uv, pm.triangles);

  std::vector<double> eta(base.vertices.size(), 1.0);
  if (t > 0.0) eta = cutoff::build_cutoff_punctured(base, pm.hole_rings, t * t, t).values;
  const auto phi_at = [&](const mesh::UV& uv) { return cfg.phi ? cfg.phi(uv[0], uv[1]) : 1.0; };

  NormalGraphField field;
  field.base = &base;
  field.phi.resize(base.vertices.size());
  for (std::size_t i = 0; i < eta.size(); ++i) field.phi[i] = phi_at(base.uv[i]) * eta[i];
  // Midpoints: φ exact, η averaged along the edge.
  field.phi_mid.resize(base.triangles.size());
  for (std::size_t k = 0; k < base.triangles.size(); ++k)
    for (int e = 0; e < 3; ++e) {
      const double eta_mid = 0.5 * (eta[base.triangles[k][e]] + eta[base.triangles[k][(e + 1) % 3]]);
      field.phi_mid[k][e] = phi_at(base.edge_mid_uv[k][e]) * eta_mid;
    }
  SliceArea out;
  field.h = cfg.h;
  out.upper = graph_area_exact(field);
  field.h = -cfg.h;
  out.lower = graph_area_exact(field);
  return out;
}

}  // namespace

SweepoutReport two_sided_tube_family(const TubeFamilyConfig& cfg) {
  if (!(cfg.h > 0.0)) throw DomainError("two_sided_tube_family: h must be positive");
  if (cfg.t_grid.empty()) throw DomainError("two_sided_tube_family: empty t grid");
  for (double t : cfg.t_grid)
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("two_sided_tube_family: t must lie in [0, 1)");
  SweepoutReport rep;
  rep.command = "fermi tube";
  rep.config = {{"a", cfg.a},
                {"h", cfg.h},
                {"patches", cfg.patches},
                {"segments", cfg.segments},
                {"ring_ratio", cfg.ring_ratio},
                {"punctures", cfg.punctures},
                {"phi", cfg.phi ? "custom" : "one"},
                {"t_grid", cfg.t_grid}};
  std::vector<SliceArea> areas(cfg.t_grid.size());
  parallel_for(areas.size(), [&](std::size_t k) { areas[k] = slice(cfg, cfg.t_grid[k]); });
  for (std::size_t k = 0; k < areas.size(); ++k)
    rep.rows.push_back({cfg.t_grid[k], areas[k].upper + areas[k].lower, cfg.t_grid[k] > 0.0 ? "tube" : "graphs",
                        {{"upper", areas[k].upper}, {"lower", areas[k].lower}}});
  const double sigma = 4.0 * std::numbers::pi * std::numbers::pi * std::cos(cfg.a) * std::sin(cfg.a);
  rep.finalize(2.0 * sigma);
  rep.metrics.emplace_back("kappa", rep.summary.margin / (cfg.h * cfg.h));
  // Closed-form area of the two parallel tori; the t = 0 row should reproduce it.
  const double parallel = 4.0 * std::numbers::pi * std::numbers::pi *
                          (std::cos(cfg.a + cfg.h) * std::sin(cfg.a + cfg.h) + std::cos(cfg.a - cfg.h) * std::sin(cfg.a - cfg.h));
  if (!cfg.phi) rep.metrics.emplace_back("parallel_pair_area", parallel);
  rep.notes.push_back("budget is twice the closed-form area of the base torus");
  return rep;
}

}  // namespace neckcut::fermi
