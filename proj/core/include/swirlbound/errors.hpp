#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace swirlbound {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SWIRLBOUND_ERROR_TYPE(Name) \
  struct Name : Error {             \
    using Error::Error;             \
  }

SWIRLBOUND_ERROR_TYPE(HorizonExceeded);
SWIRLBOUND_ERROR_TYPE(GridMismatch);
SWIRLBOUND_ERROR_TYPE(NonFiniteValue);
SWIRLBOUND_ERROR_TYPE(GridTooCoarse);
SWIRLBOUND_ERROR_TYPE(QuadratureNotConverged);
SWIRLBOUND_ERROR_TYPE(BoundaryLeavesDomain);
SWIRLBOUND_ERROR_TYPE(WindowExceeded);
SWIRLBOUND_ERROR_TYPE(InsufficientSamples);
SWIRLBOUND_ERROR_TYPE(NonPositiveSamples);
SWIRLBOUND_ERROR_TYPE(ContractionFailed);
SWIRLBOUND_ERROR_TYPE(AxisCellBlowup);
SWIRLBOUND_ERROR_TYPE(AdmissibilityFailed);

#undef SWIRLBOUND_ERROR_TYPE

// Carries the location where the checked property first broke.
struct PropertyFailed : Error {
  PropertyFailed(const std::string& what, std::string witness_loc)
      : Error(what + " [witness: " + witness_loc + "]"),
        witness(std::move(witness_loc)) {}
  std::string witness;
};

struct LowerBoundViolated : Error {
  LowerBoundViolated(const std::string& what, std::string witness_loc)
      : Error(what + " [witness: " + witness_loc + "]"),
        witness(std::move(witness_loc)) {}
  std::string witness;
};

struct ConfigInvalid : Error {
  ConfigInvalid(const std::string& what, std::string offending_key)
      : Error(what + " (key: " + offending_key + ")"),
        key(std::move(offending_key)) {}
  std::string key;
};

// Raised when the explicit-advection variant is asked to take steps larger
// than its stability limit; carries the largest admissible step.
struct CFLAdvisory : Error {
  CFLAdvisory(const std::string& what, double dt_used_, double dt_limit_)
      : Error(what), dt_used(dt_used_), dt_limit(dt_limit_) {}
  double dt_used;
  double dt_limit;
};

}  // namespace swirlbound
