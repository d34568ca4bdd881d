#include "neckcut/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "neckcut/catenoid.hpp"
#include "neckcut/errors.hpp"
#include "neckcut/numeric.hpp"

namespace neckcut::revolution {

namespace {

constexpr double kPi = std::numbers::pi;

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

// Gradient and tridiagonal Hessian of the frustum-sum area.
double area_with_derivatives(const ProfileCurve& p, std::vector<double>& grad, Tridiagonal& hess) {
  const std::size_t n = p.size();
  const double dx = p.dx();
  grad.assign(n, 0.0);
  hess.diag.assign(n, 0.0);
  hess.off.assign(n - 1, 0.0);
  CompensatedSum area;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = p.f[i], b = p.f[i + 1];
    const double d = b - a, s = a + b;
    const double len = std::hypot(dx, d);
    const double la = -d / len, lb = d / len;
    const double l2 = dx * dx / (len * len * len);
    area.add(kPi * s * len);
    grad[i] += kPi * (len + s * la);
    grad[i + 1] += kPi * (len + s * lb);
    hess.diag[i] += kPi * (2.0 * la + s * l2);
    hess.diag[i + 1] += kPi * (2.0 * lb + s * l2);
    hess.off[i] += kPi * (-s * l2);
  }
  return area.value();
}

// Solves (H + μI)x = rhs restricted to free nodes; returns false if a pivot is not positive.
bool solve_damped(const Tridiagonal& h, const std::vector<char>& free, double mu, const std::vector<double>& rhs,
                  std::vector<double>& x) {
  const std::size_t n = rhs.size();
  std::vector<double> piv(n), y(n);
  double prev_piv = 1.0, prev_y = 0.0, prev_off = 0.0;
  bool prev_free = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!free[i]) {
      piv[i] = 1.0;
      y[i] = 0.0;
      prev_free = false;
      continue;
    }
    double p = h.diag[i] + mu;
    double yi = rhs[i];
    if (prev_free) {
      const double l = prev_off / prev_piv;
      p -= l * prev_off;
      yi -= l * prev_y;
    }
    if (!(p > 0.0)) return false;
    piv[i] = p;
    y[i] = yi;
    prev_piv = p;
    prev_y = yi;
    prev_off = i + 1 < n ? h.off[i] : 0.0;
    prev_free = true;
  }
  x.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    if (!free[k]) continue;
    double v = y[k];
    if (k + 1 < n && free[k + 1]) v -= h.off[k] * x[k + 1];
    x[k] = v / piv[k];
  }
  return true;
}

}  // namespace

double revolution_area(const ProfileCurve& p) {
  if (p.size() < 2) throw DegenerateProfile("revolution_area: need at least two nodes");
  for (double v : p.f)
    if (v < 0.0) throw DegenerateProfile("revolution_area: negative radius");
  const double dx = p.dx();
  CompensatedSum area;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    area.add(kPi * (p.f[i] + p.f[i + 1]) * std::hypot(dx, p.f[i + 1] - p.f[i]));
  return area.value();
}

ProfileCurve catenoid_profile(double r, double h, double c, int nodes) {
  ProfileCurve p{r, h, std::vector<double>(static_cast<std::size_t>(nodes))};
  for (std::size_t i = 0; i < p.size(); ++i) p.f[i] = c * std::cosh(p.x(i) / c);
  p.f.front() = p.f.back() = r;
  return p;
}

ProfileCurve pinched_profile(double r, double h, double floor, int nodes) {
  ProfileCurve p{r, h, std::vector<double>(static_cast<std::size_t>(nodes), floor)};
  p.f.front() = p.f.back() = r;
  return p;
}

SweepoutReport naive_sweepout(double r, double h, const std::vector<double>& t_grid) {
  SweepoutReport rep;
  rep.command = "width naive";
  rep.config = {{"r", r}, {"h", h}, {"slices", t_grid.size()}};
  for (double t : t_grid) {
    if (t < 0.0 || t > r) throw DomainError("naive_sweepout: t must lie in [0, r]");
    const double annuli = 2.0 * kPi * (r * r - t * t);
    const double cylinder = 2.0 * kPi * t * 2.0 * h;
    rep.rows.push_back({t, annuli + cylinder, "naive", {{"annuli", annuli}, {"cylinder", cylinder}}});
  }
  rep.finalize();
  rep.metrics.emplace_back("excess", rep.summary.sup_area - 2.0 * kPi * r * r);
  rep.metrics.emplace_back("analytic_excess", 2.0 * kPi * h * h);
  return rep;
}

RevolutionPath initial_path(double r, double h, const DescentConfig& config) {
  const auto sol = catenoid::solve_parameters({r, h});
  const auto stable = catenoid_profile(r, h, sol.c_stable, config.nodes);
  const auto pinched = pinched_profile(r, h, config.floor_rel * r, config.nodes);
  RevolutionPath path;
  for (int k = 0; k < config.slices; ++k) {
    const double t = static_cast<double>(k) / (config.slices - 1);
    ProfileCurve p = pinched;
    for (std::size_t i = 0; i < p.size(); ++i) p.f[i] = (1.0 - t) * pinched.f[i] + t * stable.f[i];
    path.t.push_back(t);
    path.slices.push_back(std::move(p));
  }
  return path;
}

RelaxResult relax_slice(const ProfileCurve& start, double floor, int max_steps) {
  RelaxResult out{start, 0.0, 0};
  ProfileCurve& p = out.profile;
  const std::size_t n = p.size();
  const std::size_t mid = p.center();
  // The pinned neck is also the minimum radius of the slice.
  floor = std::max(floor, p.f[mid]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (i != mid) p.f[i] = std::max(p.f[i], floor);

  std::vector<double> grad, step, rhs(n);
  Tridiagonal hess;
  std::vector<char> free(n);
  double area = area_with_derivatives(p, grad, hess);
  for (int it = 0; it < max_steps; ++it) {
    out.steps = it;
    // Free set: interior nodes except the neck and nodes held at the floor by an outward gradient.
    double gmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool interior = i > 0 && i + 1 < n && i != mid;
      const bool at_floor = p.f[i] <= floor && grad[i] > 0.0;
      free[i] = interior && !at_floor;
      rhs[i] = free[i] ? -grad[i] : 0.0;
      if (free[i]) gmax = std::max(gmax, std::abs(grad[i]));
    }
    if (gmax < 1e-14 * (1.0 + area)) break;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(hess.diag[i]));
    double mu = 0.0;
    while (!solve_damped(hess, free, mu, rhs, step)) {
      mu = mu == 0.0 ? 1e-10 * scale : 10.0 * mu;
      if (mu > 1e12 * scale) throw NonConvergence("relax_slice: cannot regularize the Hessian");
    }
    double decrement = 0.0;
    for (std::size_t i = 0; i < n; ++i) decrement -= grad[i] * step[i];

    bool accepted = false;
    ProfileCurve trial = p;
    for (double alpha = 1.0; alpha > 1e-12; alpha *= 0.5) {
      for (std::size_t i = 0; i < n; ++i)
        if (free[i]) trial.f[i] = std::max(floor, p.f[i] + alpha * step[i]);
      const double a = revolution_area(trial);
      if (a < area) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no representable decrease left
    p = trial;
    area = area_with_derivatives(p, grad, hess);
    if (decrement < 1e-26 * (1.0 + area)) break;
  }
  out.area = revolution_area(p);
  return out;
}

WidthResult mountain_pass_width(double r, double h, const RevolutionPath& path0, const DescentConfig& config) {
  if (path0.slices.size() < 3 || path0.t.size() != path0.slices.size())
    throw DomainError("mountain_pass_width: path needs at least three slices");
  const double floor = config.floor_rel * r;
  for (const auto& s : path0.slices)
    if (s.r != r || s.h != h) throw DomainError("mountain_pass_width: slices must span the circles (r, h)");

  struct Slice {
    double t;
    ProfileCurve profile;
    double area;
  };
  // Duplicate parameters carry the same slice; keep the first.
  std::vector<Slice> path;
  for (std::size_t k = 0; k < path0.slices.size(); ++k) {
    if (!path.empty() && path0.t[k] == path.back().t) continue;
    if (!path.empty() && path0.t[k] < path.back().t) throw DomainError("mountain_pass_width: t must be nondecreasing");
    path.push_back({path0.t[k], path0.slices[k], 0.0});
  }
  if (path.size() < 3) throw DomainError("mountain_pass_width: path needs at least three distinct slices");

  path.front().area = revolution_area(path.front().profile);
  path.back().area = revolution_area(path.back().profile);
  const double endpoint_max = std::max(path.front().area, path.back().area);

  parallel_for(path.size() - 2, [&](std::size_t j) {
    auto& s = path[j + 1];
    auto res = relax_slice(s.profile, floor, config.max_newton);
    s.profile = std::move(res.profile);
    s.area = res.area;
  });

  const auto argmax = [&] {
    std::size_t best = 0;
    for (std::size_t k = 1; k < path.size(); ++k)
      if (path[k].area > path[best].area) best = k;
    return best;
  };
  const auto insert_between = [&](std::size_t k) {
    // New slice halfway in t and in neck radius, seeded by the average neighbour profile.
    const Slice& a = path[k];
    const Slice& b = path[k + 1];
    ProfileCurve seed = a.profile;
    for (std::size_t i = 0; i < seed.size(); ++i) seed.f[i] = 0.5 * (a.profile.f[i] + b.profile.f[i]);
    auto res = relax_slice(seed, floor, config.max_newton);
    path.insert(path.begin() + static_cast<std::ptrdiff_t>(k + 1), Slice{0.5 * (a.t + b.t), std::move(res.profile), res.area});
  };

  WidthResult out;
  out.endpoint_max = endpoint_max;
  double previous = -1.0;
  int outer = 0;
  for (; outer < config.max_outer; ++outer) {
    std::size_t k = argmax();
    const double current = path[k].area;
    if (!(current > endpoint_max))
      throw DomainError("mountain_pass_width: endpoints must lie strictly below the path maximum");
    if (k == 0 || k + 1 == path.size()) throw DomainError("mountain_pass_width: maximum reached at an endpoint");
    const double bracket = path[k + 1].t - path[k - 1].t;
    if (bracket < config.t_tolerance && std::abs(current - previous) <= 1e-13 * current) break;
    previous = current;
    // Tighten around the highest slice; its two neighbouring intervals are halved.
    insert_between(k);  // between k and k+1
    insert_between(k - 1);
  }
  if (outer == config.max_outer) throw NonConvergence("mountain_pass_width: max-slice area did not stabilize");

  const std::size_t k = argmax();
  out.width = path[k].area;
  out.argmax_t = path[k].t;
  out.profile_at_max = path[k].profile;
  out.neck_at_max = path[k].profile.f[path[k].profile.center()];
  out.iterations = outer;
  for (const auto& s : path) {
    out.slice_t.push_back(s.t);
    out.slice_area.push_back(s.area);
  }
  return out;
}

ExcessComparison excess_scaling_comparison(double r, const std::vector<double>& h_grid) {
  ExcessComparison out;
  std::vector<double> lx, ly;
  for (double h : h_grid) {
    const auto sol = catenoid::solve_parameters({r, h});
    ExcessRow row;
    row.h = h;
    row.naive_excess = 2.0 * kPi * h * h;
    // |U| − 2πr² = 2πr²(tanh(h/c) − 1) + 2πhc, written without cancellation.
    const double x = h / sol.c_unstable;
    const double tanh_minus_one = -2.0 / (std::exp(2.0 * x) + 1.0);
    row.optimal_excess = 2.0 * kPi * r * r * tanh_minus_one + 2.0 * kPi * h * sol.c_unstable;
    row.ratio = row.naive_excess / row.optimal_excess;
    out.rows.push_back(row);
    if (h < 1.0) {
      lx.push_back(std::log(-std::log(h)));
      ly.push_back(std::log(row.ratio));
    }
  }
  if (lx.size() >= 2) out.loglog_slope = fit_line(lx, ly).slope;
  return out;
}

}  // namespace neckcut::revolution
