#pragma once

#include <string>
#include <vector>

namespace neckcut::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;  ///< numeric checks and runtime limit
  std::string detail;
  double seconds = 0.0;
  double runtime_limit = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion `id` in 1..10. Exceptions from the computation are caught and reported
/// as a failure with the message in `detail`.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

/// "PASS  3 mountain-pass width: ... [12.3 s / 60 s]"
std::string format_line(const CriterionResult& r);

}  // namespace neckcut::acceptance
