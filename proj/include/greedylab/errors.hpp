#pragma once

#include <stdexcept>
#include <string>

namespace greedylab {

/// Thrown when a subset enumeration would exceed the hard cap (10^6 sets).
struct EnumerationCapError : std::runtime_error {
  explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when the simplex pivot guard trips.
struct CyclingGuardError : std::runtime_error {
  explicit CyclingGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace greedylab
