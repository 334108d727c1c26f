#pragma once

#include <stdexcept>
#include <string>

namespace kinemetrica {

// Caller passed arguments that violate an operation's preconditions
// (dimension mismatch, nonpositive length, out-of-range arc parameter...).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested operation is not supported for the given shape or curve kind.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Experiment configuration is malformed or degenerate (bad JSON, unknown
// keys, acceptance rate collapsed to zero). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Inputs violate the curvature-regime hypotheses under which a closed-form
// value is exact (e.g. a loop larger than the window in small-loop mode).
// CLI exit code 3.
class RegimeError : public std::runtime_error {
 public:
  explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kinemetrica
