#pragma once

#include <stdexcept>
#include <string>

namespace rflab {

// Invalid input: malformed files, mismatched dimensions, out-of-range
// arguments.  Maps to CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// An evaluation engine cannot run the requested circuit (e.g. the dense
// engine was handed per-shot random Clifford gates).  Maps to CLI exit code 3.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

// A resource cap was exceeded (statevector width, training width, ...).
// Maps to CLI exit code 4.
class CapError : public std::runtime_error {
 public:
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rflab
