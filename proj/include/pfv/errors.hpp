#pragma once

#include <stdexcept>
#include <string>

namespace pfv {

/// Thrown when a wedge or curvature quantity is requested at |t| >= x_r,
/// i.e. at or beyond the first focal radius of the base point.
struct FocalRadiusError : std::domain_error {
  explicit FocalRadiusError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when an approach curve is evaluated at a step t that makes the
/// leading block numerically singular.
struct StepTooLargeError : std::domain_error {
  explicit StepTooLargeError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a secondary level has c_r <= 0 while t != 0, so no wedge
/// point exists on that hyperbola.
struct DegenerateLevelError : std::domain_error {
  explicit DegenerateLevelError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a log-log slope fit has fewer than three usable samples.
struct DegenerateFitError : std::runtime_error {
  explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfv
