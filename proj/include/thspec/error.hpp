#pragma once

#include <stdexcept>

namespace thspec {

// Invalid user-supplied parameters (distribution, model, CLI flags).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A request exceeds a configured resource cap (e.g. dense matrix size).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative numerical routine failed to converge.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A result contradicts a structural guarantee; indicates a bug.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace thspec
