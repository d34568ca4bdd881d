#pragma once

#include <stdexcept>
#include <string>

namespace neckcut {

/// Base of every failure raised by the toolkit. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define NECKCUT_DEFINE_ERROR(Name) \
  class Name : public Error {      \
  public:                          \
    using Error::Error;            \
  }

/// Separation exceeds the critical ratio: only the two-disk competitor exists.
NECKCUT_DEFINE_ERROR(NoCatenoid);
NECKCUT_DEFINE_ERROR(NonConvergence);
NECKCUT_DEFINE_ERROR(DomainError);
NECKCUT_DEFINE_ERROR(DegenerateProfile);
/// Normal offset leaves the chart where the normal exponential map is a diffeomorphism.
NECKCUT_DEFINE_ERROR(ChartOverflow);
NECKCUT_DEFINE_ERROR(NotMinimal);
NECKCUT_DEFINE_ERROR(NotPositiveDefinite);
NECKCUT_DEFINE_ERROR(RadiusTooLarge);
NECKCUT_DEFINE_ERROR(SolverFailure);
NECKCUT_DEFINE_ERROR(BudgetViolated);
NECKCUT_DEFINE_ERROR(RegimeViolation);

#undef NECKCUT_DEFINE_ERROR

}  // namespace neckcut
