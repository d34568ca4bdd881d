#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace neckcut {

/// Neumaier-compensated running sum. Order of `add` calls fixes the result bit for bit.
class CompensatedSum {
public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

struct BisectionResult {
  double root = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Bisection for a sign change of `f` on [lo, hi]. Stops when the bracket stops
/// shrinking in floating point or after `max_iterations`.
BisectionResult bisect(const std::function<double(double)>& f, double lo, double hi,
                       int max_iterations = 200);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y ≈ slope·x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Geometric grid from `first` multiplied by `ratio` for `count` entries.
std::vector<double> geometric_grid(double first, double ratio, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Worker count from NECKCUT_THREADS (default 1, clamped to [1, 64]).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Results must be written to per-index slots so that
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace neckcut
