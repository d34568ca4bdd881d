#include "neckcut/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "neckcut/catenoid.hpp"
#include "neckcut/cutoff.hpp"
#include "neckcut/doubling.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/fermi.hpp"
#include "neckcut/jacobi.hpp"
#include "neckcut/mesh_builders.hpp"
#include "neckcut/neck_scaling.hpp"
#include "neckcut/numeric.hpp"
#include "neckcut/revolution.hpp"
#include "neckcut/tube_family.hpp"

namespace neckcut::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [FAIL]");
  }
};

void catenoid_estimate(Outcome& o) {
  const auto th = catenoid::find_estimate_threshold(1.0, 1e-9);
  int checked = 0, held = 0;
  for (double h = 1e-1; h >= 1e-6 * (1 - 1e-12); h /= 2) {
    if (h > th.h0) continue;
    const auto sol = catenoid::solve_parameters({1.0, h});
    ++checked;
    if (sol.area_unstable <= catenoid::estimate_bound(1.0, h)) ++held;
  }
  o.check(checked > 0 && held == checked,
          "bound held at " + std::to_string(held) + "/" + std::to_string(checked) + " grid points, h0 = " + fmt(th.h0));
}

void asymptotic_ratio(Outcome& o) {
  const std::vector<double> grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  const auto scan = catenoid::asymptotic_ratio_scan(1.0, grid);
  const double last = scan.rows.back().asymptotic_ratio;
  o.check(last >= 0.9 && last <= 1.1, "ratio at h = 1e-8 is " + fmt(last) + ", target [0.9, 1.1]");
  bool decreasing = true;
  for (std::size_t k = scan.rows.size() - 3; k < scan.rows.size(); ++k)
    decreasing = decreasing && std::abs(scan.rows[k].asymptotic_ratio - 1) < std::abs(scan.rows[k - 1].asymptotic_ratio - 1);
  o.check(decreasing, "|ratio - 1| decreasing over the last four points");
}

void width(Outcome& o) {
  for (double h : {0.3, 0.5}) {
    const auto start = std::chrono::steady_clock::now();
    const auto res = revolution::mountain_pass_width(1.0, h, revolution::initial_path(1.0, h));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double exact = catenoid::solve_parameters({1.0, h}).area_unstable;
    const double rel = std::abs(res.width - exact) / exact;
    o.check(rel <= 5e-3 && secs < 60.0,
            "h = " + fmt(h, 2) + ": width " + fmt(res.width, 8) + " vs " + fmt(exact, 8) + ", rel " + fmt(rel, 3) +
                ", " + fmt(secs, 3) + " s");
  }
}

void excess(Outcome& o) {
  const auto cmp = revolution::excess_scaling_comparison(1.0, {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7});
  o.check(std::abs(cmp.loglog_slope - 1.0) <= 0.25, "log-log slope " + fmt(cmp.loglog_slope, 4) + ", target 1 +- 0.25");
}

void fermi_expansion(Outcome& o) {
  const auto m = mesh::clifford_torus_grid(64);
  const double base = mesh::total_area(m);
  const std::vector<double> one(m.vertex_count(), 1.0);
  std::vector<double> s2, da;
  double closed = 0.0;
  for (double s : {1e-3, 2e-3, 5e-3, 1e-2}) {
    const double a = fermi::graph_area_exact({&m, one, {}, s});
    s2.push_back(s * s);
    da.push_back(a - base);
    closed = std::max(closed, std::abs(a / (2 * kPi * kPi * std::cos(2 * s)) - 1));
  }
  const double q = fit_line(s2, da).slope;
  o.check(std::abs(q / (-4 * kPi * kPi) - 1) <= 0.01,
          "quadratic coefficient " + fmt(q, 8) + " vs -4pi^2 = " + fmt(-4 * kPi * kPi, 8) + " (" +
              std::to_string(m.vertex_count()) + " vertices)");
  const double area_rel = std::abs(base / (2 * kPi * kPi) - 1);
  o.check(area_rel <= 1e-4, "area of the Clifford torus mesh off by " + fmt(area_rel, 3) + " relative");
  o.detail << "; parallel areas match 2pi^2 cos 2s to " << fmt(closed, 3);
}

double band_error(int n) {
  // Band 0 <= phi <= pi with Dirichlet ends: lowest eigenvalue 2pi^2/pi^2 - 4 = -2.
  const auto m = mesh::parallel_torus_band(kPi / 4, n, n / 2, kPi);
  jacobi::JacobiOptions opt;
  opt.dirichlet.assign(m.vertex_count(), 0);
  for (std::size_t i = 0; i < m.vertex_count(); ++i)
    if (m.uv[i][1] == 0.0 || m.uv[i][1] == kPi) opt.dirichlet[i] = 1;
  return std::abs(jacobi::jacobi_lowest(m, opt).eigenvalue + 2.0);
}

void jacobi_spectrum(Outcome& o) {
  const double lambda = jacobi::jacobi_lowest(mesh::clifford_torus_grid(64)).eigenvalue;
  o.check(std::abs(lambda + 4) <= 0.02 * 4, "closed torus lowest eigenvalue " + fmt(lambda, 12));
  const double e1 = band_error(64), e2 = band_error(128);
  const double order = std::log2(e1 / e2);
  o.check(e1 <= 0.02 * 2 && order >= 1.8,
          "Dirichlet band errors " + fmt(e1, 3) + " -> " + fmt(e2, 3) + ", order " + fmt(order, 3));
}

void log_cutoff(Outcome& o) {
  for (double t : {1e-2, 1e-3}) {
    const auto d = mesh::flat_polar_disk(4096, 0.1 * t * t, 1.3);
    const double e = cutoff::cutoff_energy(cutoff::build_cutoff(d, 0, t));
    const double rel = std::abs(e / (2 * kPi / -std::log(t)) - 1);
    o.check(rel <= 1e-6, "flat disk t = " + fmt(t, 2) + ": rel error " + fmt(rel, 3));
  }
  for (double t : {0.02, 0.05, 0.1}) {
    mesh::PatchLayout layout;
    layout.holes.push_back({0, 1, mesh::metric_circle(kPi / 4, 0.1 * t * t), true});
    const auto pm = mesh::patch_torus_layout(layout);
    const auto m = mesh::realize(mesh::parallel_torus(kPi / 4), pm.uv, pm.triangles);
    const auto c = cutoff::build_cutoff(m, pm.centres[0], t);
    const double e = cutoff::cutoff_energy(c);
    const double D = 2 * cutoff::fit_perimeter_constant(c).d_fit;
    o.check(e <= D / -std::log(t), "Clifford t = " + fmt(t, 2) + ": energy*(-log t) = " + fmt(e * -std::log(t), 6) +
                                       " <= D = " + fmt(D, 6));
  }
}

void tube_family(Outcome& o) {
  for (double h : {0.02, 0.05}) {
    fermi::TubeFamilyConfig cfg;
    cfg.h = h;
    cfg.t_grid = fermi::default_tube_t_grid();
    const auto rep = fermi::two_sided_tube_family(cfg);
    const double kappa = rep.metric("kappa");
    o.check(rep.summary.sup_area < 4 * kPi * kPi && kappa >= 0.05,
            "h = " + fmt(h, 2) + ": sup " + fmt(rep.summary.sup_area, 10) + ", margin/h^2 = " + fmt(kappa, 4));
  }
}

void doubling(Outcome& o) {
  const s3::NeckSchedule sched;
  for (int m : {2, 3}) {
    const auto rep = s3::assemble_doubled_sweepout(m, sched, s3::default_doubling_t_grid(sched));
    const double chi = rep.metric("euler_necks");
    const bool euler = chi == 2.0 - 2.0 * (m * m + 1) && rep.metric("euler_opening") == chi &&
                       rep.metric("euler_retracting") == chi;
    o.check(rep.summary.sup_area < 4 * kPi * kPi && rep.summary.margin > 0.0 && euler &&
                rep.metric("equivariance_unmatched") == 0.0,
            "m = " + std::to_string(m) + ": sup " + fmt(rep.summary.sup_area, 10) + ", margin " +
                fmt(rep.summary.margin, 4) + ", chi " + fmt(chi, 3));
  }
}

void neck_scaling(Outcome& o) {
  const auto hs = neck::default_h_grid();
  for (int n = 3; n <= 6; ++n) {
    neck::NeckScalingConfig cfg;
    cfg.n = n;
    const double slope = neck::cost_exponent(cfg, hs);
    o.check(std::abs(slope - n) <= 0.01, "n = " + std::to_string(n) + ": slope " + fmt(slope, 8));
  }
  neck::NeckScalingConfig two;
  two.n = 2;
  two.A = 0.5;
  const double slope = neck::cost_exponent(two, hs);
  const double h0 = neck::scan_regime_threshold(two, hs);
  o.check(std::abs(slope - 2) <= 0.01 && h0 == 0.0,
          "n = 2 control: slope " + fmt(slope, 8) + ", no h0 with cost <= (A/2)h^2");
}

struct Criterion {
  const char* name;
  double limit;
  std::function<void(Outcome&)> run;
};

const Criterion& criterion(int id) {
  static const Criterion all[kCriterionCount] = {
      {"catenoid estimate", 1.0, catenoid_estimate},
      {"asymptotic ratio", 1.0, asymptotic_ratio},
      {"mountain-pass width", 120.0, width},
      {"naive vs optimal excess", 1.0, excess},
      {"Fermi expansion", 10.0, fermi_expansion},
      {"Jacobi spectrum", 30.0, jacobi_spectrum},
      {"log-cutoff energy", 10.0, log_cutoff},
      {"two-sided tube family", 60.0, tube_family},
      {"doubling budget", 120.0, doubling},
      {"neck scaling", 1.0, neck_scaling},
  };
  if (id < 1 || id > kCriterionCount) throw DomainError("acceptance: criterion id must lie in 1..10");
  return all[id - 1];
}

}  // namespace

CriterionResult run_criterion(int id) {
  const auto& c = criterion(id);
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  r.runtime_limit = c.limit;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = o.pass && r.seconds < r.runtime_limit;
  r.detail = o.detail.str();
  if (r.seconds >= r.runtime_limit) r.detail += "; runtime limit exceeded [FAIL]";
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %s: ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  char tail[64];
  std::snprintf(tail, sizeof tail, " [%.2f s / %g s]", r.seconds, r.runtime_limit);
  return head + r.detail + tail;
}

}  // namespace neckcut::acceptance
