#pragma once

#include <stdexcept>
#include <string>

namespace smax {

/// Bad instance data, malformed files, violated preconditions. CLI exit 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Unworkable configuration, e.g. exhaustion cap exceeded. CLI exit 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal numerical failure (LP cycling guard, invariant breach). CLI exit 4.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact 64-bit rational arithmetic left the representable range.
class OverflowError : public InputError {
 public:
  explicit OverflowError(const std::string& what) : InputError(what) {}
};

}  // namespace smax
