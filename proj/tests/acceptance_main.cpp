#include <cstdio>

#include "neckcut/acceptance.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= neckcut::acceptance::kCriterionCount; ++id) {
    const auto r = neckcut::acceptance::run_criterion(id);
    std::printf("%s\n", neckcut::acceptance::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d/%d criteria passed\n", neckcut::acceptance::kCriterionCount - failed, neckcut::acceptance::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
