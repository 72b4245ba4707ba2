#pragma once

#include <stdexcept>

namespace persist {

// Raised when an exhaustive computation would exceed its hard size limit.
// Callers surface this as a distinct exit path from ordinary domain errors.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace persist
