#pragma once

#include <stdexcept>
#include <string>

namespace sphereabout {

/// Bad configuration value (file key, CLI flag, constructor argument).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally invalid input to an operation (e.g. a demand outside the
/// feasibility set, an empty polyline).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Geometric degeneracy that the caller must resolve (antipodal arc endpoints).
class DegenerateGeometryError : public std::runtime_error {
public:
  explicit DegenerateGeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sphereabout
