#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

// Bad user input: malformed files, out-of-range parameters, unknown names.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Instance exceeds a configured limit (cell budget, oracle size cap).
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested combination exists conceptually but is not implemented
// (e.g. exact cell averages for a catalog entry without an antiderivative).
struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical hypothesis of the operation is violated.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dyadic
