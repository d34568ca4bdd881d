#include "neckcut/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "neckcut/acceptance.hpp"
#include "neckcut/catenoid.hpp"
#include "neckcut/cutoff.hpp"
#include "neckcut/doubling.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/fermi.hpp"
#include "neckcut/jacobi.hpp"
#include "neckcut/mesh_builders.hpp"
#include "neckcut/neck_scaling.hpp"
#include "neckcut/numeric.hpp"
#include "neckcut/report.hpp"
#include "neckcut/revolution.hpp"
#include "neckcut/tube_family.hpp"

namespace neckcut::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Output {
  bool json = false;
  std::string out_path;
  std::string csv_path;
};

void add_output(CLI::App* app, Output& o) {
  app->add_flag("--json", o.json, "print the JSON report to stdout");
  app->add_option("--out", o.out_path, "write the JSON report to this file");
  app->add_option("--csv", o.csv_path, "write report rows as CSV to this file");
}

// Write to a sibling temporary and rename over the target.
void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open " + tmp + " for writing");
    f << text;
    if (!f) throw DomainError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

int emit(const SweepoutReport& rep, const Output& o, std::ostream& out) {
  const std::string json = to_json(rep).dump(2) + "\n";
  if (!o.out_path.empty()) write_atomic(o.out_path, json);
  if (!o.csv_path.empty()) write_atomic(o.csv_path, to_csv(rep));
  if (o.json) {
    out << json;
  } else {
    out << rep.command << ": " << (rep.summary.pass ? "pass" : "FAIL");
    if (std::isfinite(rep.summary.budget))
      out << ", sup " << format_double(rep.summary.sup_area) << ", budget " << format_double(rep.summary.budget)
          << ", margin " << format_double(rep.summary.margin);
    out << "\n";
    for (const auto& [k, v] : rep.metrics) out << "  " << k << " = " << format_double(v) << "\n";
  }
  return rep.summary.pass ? kExitPass : kExitFailed;
}

SweepoutReport catenoid_solve(double r, double h) {
  const auto sol = catenoid::solve_parameters({r, h});
  SweepoutReport rep;
  rep.command = "catenoid solve";
  rep.config = {{"r", r}, {"h", h}};
  rep.finalize();
  rep.metrics = {{"c_unstable", sol.c_unstable},
                 {"c_stable", sol.c_stable},
                 {"area_unstable", sol.area_unstable},
                 {"area_stable", sol.area_stable}};
  if (h < 1.0) {
    const double bound = 2 * kPi * r * r + 4 * kPi * h * h / -std::log(h);
    rep.metrics.emplace_back("estimate_bound", bound);
    rep.notes.push_back("estimate_bound is 2 pi r^2 + 4 pi h^2/(-log h)");
  }
  return rep;
}

SweepoutReport catenoid_scan(double r, const std::vector<double>& grid) {
  const auto scan = catenoid::asymptotic_ratio_scan(r, grid);
  SweepoutReport rep;
  rep.command = "catenoid scan";
  rep.config = {{"r", r}, {"h_grid", grid}};
  bool all = true;
  for (const auto& row : scan.rows) {
    rep.rows.push_back({row.h, row.area_unstable, "unstable",
                        {{"c_unstable", row.c_unstable}, {"bound", row.bound_value}, {"ratio", row.asymptotic_ratio}}});
    all = all && row.bound_holds;
  }
  rep.finalize();
  rep.summary.pass = all;
  const auto th = catenoid::find_estimate_threshold(r);
  rep.metrics = {{"h0", th.h0}, {"first_failure", th.first_failure}};
  return rep;
}

SweepoutReport width_report(double r, double h, const revolution::DescentConfig& dc) {
  const auto res = revolution::mountain_pass_width(r, h, revolution::initial_path(r, h, dc), dc);
  const auto sol = catenoid::solve_parameters({r, h});
  SweepoutReport rep;
  rep.command = "width";
  rep.config = {{"r", r}, {"h", h}, {"nodes", dc.nodes}, {"slices", dc.slices}, {"floor_rel", dc.floor_rel}};
  for (std::size_t k = 0; k < res.slice_t.size(); ++k) rep.rows.push_back({res.slice_t[k], res.slice_area[k], "relaxed", {}});
  rep.finalize();
  const double rel = std::abs(res.width - sol.area_unstable) / sol.area_unstable;
  rep.metrics = {{"width", res.width},
                 {"area_unstable", sol.area_unstable},
                 {"relative_error", rel},
                 {"argmax_t", res.argmax_t},
                 {"neck_at_max", res.neck_at_max},
                 {"c_unstable", sol.c_unstable}};
  rep.summary.pass = rel <= 5e-3;
  return rep;
}

SweepoutReport fermi_expand(int n) {
  const auto m = mesh::clifford_torus_grid(n);
  const double base = mesh::total_area(m);
  const std::vector<double> one(m.vertex_count(), 1.0);
  SweepoutReport rep;
  rep.command = "fermi expand";
  rep.config = {{"n", n}};
  std::vector<double> s2, da;
  for (double s : {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2}) {
    const double a = fermi::graph_area_exact({&m, one, {}, s});
    rep.rows.push_back({s, a, "graph", {{"closed_form", 2 * kPi * kPi * std::cos(2 * s)}}});
    if (s <= 1e-2) {
      s2.push_back(s * s);
      da.push_back(a - base);
    }
  }
  rep.finalize();
  const double q = fit_line(s2, da).slope;
  const auto est = fermi::graph_area_estimate({&m, one, {}, 1e-2});
  rep.metrics = {{"base_area", base},
                 {"quadratic_coefficient", q},
                 {"expected", -4 * kPi * kPi},
                 {"second_variation", est.q},
                 {"vertices", static_cast<double>(m.vertex_count())}};
  rep.summary.pass = std::abs(q / (-4 * kPi * kPi) - 1) <= 0.01 && std::abs(base / (2 * kPi * kPi) - 1) <= 1e-4;
  return rep;
}

SweepoutReport fermi_jacobi(int n) {
  const auto d = jacobi::jacobi_lowest(mesh::clifford_torus_grid(n));
  SweepoutReport rep;
  rep.command = "fermi jacobi";
  rep.config = {{"n", n}};
  rep.finalize();
  rep.metrics = {{"eigenvalue", d.eigenvalue}, {"iterations", static_cast<double>(d.iterations)}};
  rep.summary.pass = std::abs(d.eigenvalue + 4) <= 0.08;
  return rep;
}

SweepoutReport cutoff_energy(const std::string& surface, const std::vector<double>& ts) {
  SweepoutReport rep;
  rep.command = "cutoff energy";
  rep.config = {{"surface", surface}, {"t_grid", ts}};
  bool ok = true;
  for (double t : ts) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("cutoff: t must lie in (0, 1)");
    if (surface == "disk") {
      const auto d = mesh::flat_polar_disk(4096, 0.1 * t * t, 1.3);
      const double e = cutoff::cutoff_energy(cutoff::build_cutoff(d, 0, t));
      const double exact = 2 * kPi / -std::log(t);
      rep.rows.push_back({t, e, "disk", {{"closed_form", exact}, {"relative_error", std::abs(e / exact - 1)}}});
      ok = ok && std::abs(e / exact - 1) <= 1e-6;
    } else {
      mesh::PatchLayout layout;
      layout.holes.push_back({0, 1, mesh::metric_circle(kPi / 4, 0.1 * t * t), true});
      const auto pm = mesh::patch_torus_layout(layout);
      const auto m = mesh::realize(mesh::parallel_torus(kPi / 4), pm.uv, pm.triangles);
      const auto c = cutoff::build_cutoff(m, pm.centres[0], t);
      const double e = cutoff::cutoff_energy(c);
      const double D = 2 * cutoff::fit_perimeter_constant(c).d_fit;
      rep.rows.push_back({t, e, "clifford", {{"D", D}, {"energy_times_log", e * -std::log(t)}}});
      ok = ok && e <= D / -std::log(t);
    }
  }
  rep.finalize();
  rep.summary.pass = ok;
  return rep;
}

SweepoutReport doubling_slice(int m, const s3::NeckSchedule& sched, double t, const std::string& mesh_out) {
  const auto sl = s3::assemble_slice(m, sched, t, true);
  SweepoutReport rep;
  rep.command = "doubling slice";
  rep.config = {{"m", m}, {"epsilon", sched.epsilon}, {"delta", sched.delta}, {"cutoff_radius", sched.cutoff_radius}, {"t", t}};
  rep.rows.push_back({sl.t, sl.area, sl.phase, sl.components});
  rep.finalize(4 * kPi * kPi);
  const auto eq = s3::check_equivariance(sl.mesh, m);
  rep.metrics = {{"vertices", static_cast<double>(sl.mesh.vertex_count())},
                 {"euler", static_cast<double>(sl.mesh.vertex_count() ? mesh::euler_characteristic(sl.mesh) : 0)},
                 {"equivariance_unmatched", static_cast<double>(eq.unmatched_vertices + eq.unmatched_triangles)}};
  rep.summary.pass = rep.summary.pass && eq.unmatched_vertices + eq.unmatched_triangles == 0;
  if (!mesh_out.empty()) {
    std::ostringstream os;
    mesh::write_mesh(os, sl.mesh);
    write_atomic(mesh_out, os.str());
  }
  return rep;
}

SweepoutReport neck_optimum(const neck::NeckScalingConfig& cfg) {
  SweepoutReport rep;
  rep.command = "neck optimum";
  rep.config = {{"n", cfg.n}, {"c", cfg.c}, {"C", cfg.C}, {"A", cfg.A}, {"h", cfg.h}, {"R", cfg.R}};
  const auto curve = neck::neck_cost_curve(cfg, 2001);
  for (std::size_t k = 0; k < curve.t_grid.size(); k += 100) rep.rows.push_back({curve.t_grid[k], curve.cost[k], "cost", {}});
  rep.finalize();
  rep.metrics = {{"t_star", neck::optimal_neck_radius(cfg)},
                 {"t_star_scan", curve.t_star},
                 {"B", neck::cost_constant(cfg)},
                 {"h0", neck::regime_threshold(cfg)},
                 {"max_cost", neck::max_neck_cost(cfg)},
                 {"half_gain", cfg.A / 2 * cfg.h * cfg.h},
                 {"opened_hole_drop", neck::opened_hole_drop(cfg)}};
  return rep;
}

int verify_all(const std::vector<int>& only, bool json, std::ostream& out) {
  std::vector<acceptance::CriterionResult> results;
  for (int id = 1; id <= acceptance::kCriterionCount; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    results.push_back(acceptance::run_criterion(id));
    if (!json) out << acceptance::format_line(results.back()) << "\n" << std::flush;
  }
  int passed = 0;
  for (const auto& r : results) passed += r.pass;
  if (json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"runtime_limit", r.runtime_limit}});
    out << nlohmann::ordered_json{{"criteria", arr}, {"passed", passed}, {"total", results.size()}}.dump(2) << "\n";
  } else {
    out << passed << "/" << results.size() << " criteria passed\n";
  }
  return passed == static_cast<int>(results.size()) ? kExitPass : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sweepout and neck-cost computations for minimal surfaces", "neckcut"};
  // "-h" would clash with the offset option --h.
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  Output o;
  std::function<int()> action;

  // catenoid
  auto* cat = app.add_subcommand("catenoid", "catenoids between two coaxial circles")->require_subcommand(1);
  double r = 1.0, h = 0.1;
  auto* solve = cat->add_subcommand("solve", "neck parameters and areas of both catenoids");
  solve->add_option("--r", r, "circle radius")->check(CLI::PositiveNumber);
  solve->add_option("--h", h, "half separation")->check(CLI::PositiveNumber);
  add_output(solve, o);
  solve->callback([&] { action = [&] { return emit(catenoid_solve(r, h), o, out); }; });
  std::vector<double> h_grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  auto* scan = cat->add_subcommand("scan", "unstable neck and area estimate over decreasing h");
  scan->add_option("--r", r, "circle radius")->check(CLI::PositiveNumber);
  scan->add_option("--h-grid", h_grid, "strictly decreasing h values")->delimiter(',');
  add_output(scan, o);
  scan->callback([&] { action = [&] { return emit(catenoid_scan(r, h_grid), o, out); }; });

  // width
  auto* width = app.add_subcommand("width", "mountain-pass width over surfaces of revolution");
  revolution::DescentConfig dc;
  width->add_option("--r", r, "circle radius")->check(CLI::PositiveNumber);
  width->add_option("--h", h, "half separation")->check(CLI::PositiveNumber);
  width->add_option("--nodes", dc.nodes, "profile nodes")->check(CLI::Range(5, 100001));
  width->add_option("--slices", dc.slices, "path slices")->check(CLI::Range(3, 10001));
  width->add_option("--floor", dc.floor_rel, "profile floor relative to r")->check(CLI::PositiveNumber);
  bool naive = false;
  width->add_flag("--naive", naive, "report the two-disk and cylinder sweepout instead");
  add_output(width, o);
  width->callback([&] {
    action = [&] {
      if (!naive) return emit(width_report(r, h, dc), o, out);
      return emit(revolution::naive_sweepout(r, h, linear_grid(0.0, r, dc.slices)), o, out);
    };
  });

  // fermi
  auto* fermi_cmd = app.add_subcommand("fermi", "normal graphs over the Clifford torus")->require_subcommand(1);
  int n = 64;
  auto* expand = fermi_cmd->add_subcommand("expand", "area of parallel tori and the quadratic coefficient");
  expand->add_option("--n", n, "grid cells per side")->check(CLI::Range(4, 1024));
  add_output(expand, o);
  expand->callback([&] { action = [&] { return emit(fermi_expand(n), o, out); }; });
  auto* jac = fermi_cmd->add_subcommand("jacobi", "lowest eigenvalue of the Jacobi operator");
  jac->add_option("--n", n, "grid cells per side")->check(CLI::Range(4, 1024));
  add_output(jac, o);
  jac->callback([&] { action = [&] { return emit(fermi_jacobi(n), o, out); }; });
  fermi::TubeFamilyConfig tube;
  tube.t_grid = fermi::default_tube_t_grid();
  auto* tube_cmd = fermi_cmd->add_subcommand("tube", "two-sided family joined across punctures");
  tube_cmd->add_option("--h", tube.h, "sheet offset")->check(CLI::PositiveNumber);
  tube_cmd->add_option("--patches", tube.patches, "patches per side")->check(CLI::Range(2, 64));
  tube_cmd->add_option("--segments", tube.segments, "cells per patch side")->check(CLI::Range(2, 256));
  tube_cmd->add_option("--t-grid", tube.t_grid, "cutoff radii")->delimiter(',');
  add_output(tube_cmd, o);
  tube_cmd->callback([&] { action = [&] { return emit(fermi::two_sided_tube_family(tube), o, out); }; });

  // cutoff
  auto* cut = app.add_subcommand("cutoff", "logarithmic cutoff energies")->require_subcommand(1);
  std::string surface = "disk";
  std::vector<double> ts{1e-2, 1e-3};
  auto* energy = cut->add_subcommand("energy", "Dirichlet energy of the log cutoff");
  energy->add_option("--surface", surface, "disk or clifford")->check(CLI::IsMember({"disk", "clifford"}));
  energy->add_option("--t", ts, "outer radii")->delimiter(',');
  add_output(energy, o);
  energy->callback([&] { action = [&] { return emit(cutoff_energy(surface, ts), o, out); }; });

  // doubling
  auto* dbl = app.add_subcommand("doubling", "equivariant doubled Clifford torus in S^3")->require_subcommand(1);
  int m = 2;
  s3::NeckSchedule sched;
  s3::DoublingResolution res;
  const auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--m", m, "symmetry order")->check(CLI::Range(2, 16));
    sub->add_option("--epsilon", sched.epsilon, "largest neck radius")->check(CLI::PositiveNumber);
    sub->add_option("--delta", sched.delta, "closing parameter")->check(CLI::PositiveNumber);
    sub->add_option("--cutoff-radius", sched.cutoff_radius, "opening radius")->check(CLI::PositiveNumber);
  };
  auto* sweep = dbl->add_subcommand("sweep", "areas of every slice against 4 pi^2");
  add_schedule(sweep);
  sweep->add_option("--segments", res.segments, "cells per patch side")->check(CLI::Range(2, 256));
  sweep->add_option("--tube-rings", res.tube_rings, "rings along each neck")->check(CLI::Range(1, 4096));
  std::vector<double> dt;
  sweep->add_option("--t-grid", dt, "slice parameters in [0, 1/2]")->delimiter(',');
  add_output(sweep, o);
  sweep->callback([&] {
    action = [&] {
      sched.validate();
      return emit(s3::assemble_doubled_sweepout(m, sched, dt.empty() ? s3::default_doubling_t_grid(sched) : dt, res), o, out);
    };
  });
  double t = 0.2;
  std::string mesh_out;
  auto* slice = dbl->add_subcommand("slice", "one slice with structural checks and optional mesh export");
  add_schedule(slice);
  slice->add_option("--t", t, "slice parameter in [0, 1/2]");
  slice->add_option("--mesh-out", mesh_out, "write the slice mesh in index-list format");
  add_output(slice, o);
  slice->callback([&] { action = [&] { return emit(doubling_slice(m, sched, t, mesh_out), o, out); }; });

  // neck
  auto* nk = app.add_subcommand("neck", "neck cost against the second variation gain")->require_subcommand(1);
  neck::NeckScalingConfig ncfg;
  const auto add_neck = [&](CLI::App* sub) {
    sub->add_option("--n", ncfg.n, "hypersurface dimension")->check(CLI::Range(2, 6));
    sub->add_option("--c", ncfg.c, "lower volume constant")->check(CLI::PositiveNumber);
    sub->add_option("--C", ncfg.C, "upper volume constant")->check(CLI::PositiveNumber);
    sub->add_option("--A", ncfg.A, "second variation constant")->check(CLI::PositiveNumber);
    sub->add_option("--R", ncfg.R, "outer hole radius")->check(CLI::PositiveNumber);
  };
  auto* fit = nk->add_subcommand("fit", "exponent of the maximal neck cost in h");
  add_neck(fit);
  std::vector<double> nh = neck::default_h_grid();
  fit->add_option("--h-grid", nh, "offsets")->delimiter(',');
  add_output(fit, o);
  fit->callback([&] { action = [&] { return emit(neck::neck_fit_report(ncfg, nh), o, out); }; });
  auto* opt = nk->add_subcommand("optimum", "optimal neck radius, maximal cost and opened-hole drop");
  add_neck(opt);
  opt->add_option("--h", ncfg.h, "offset")->check(CLI::PositiveNumber);
  add_output(opt, o);
  opt->callback([&] { action = [&] { return emit(neck_optimum(ncfg), o, out); }; });

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria");
  std::vector<int> only;
  bool vjson = false;
  verify->add_option("--only", only, "criterion ids")->delimiter(',')->check(CLI::Range(1, acceptance::kCriterionCount));
  verify->add_flag("--json", vjson, "print results as JSON");
  verify->callback([&] { action = [&] { return verify_all(only, vjson, out); }; });

  std::vector<const char*> argv{"neckcut"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    return action();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoCatenoid& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace neckcut::cli
