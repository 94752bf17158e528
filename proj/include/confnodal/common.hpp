#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace confnodal {

inline constexpr double kPi = 3.14159265358979323846;

/// Error taxonomy; mirrors the CLI exit codes (1..4).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated mathematical precondition (domain constraints, degenerate data).
class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure (overflow, lost bracket, unresolved oscillation).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Round-trip quality below configured thresholds.
class AcceptanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fractional order alpha in (0, 1].
struct AlphaOrder {
  double value;

  explicit AlphaOrder(double a) : value(a) {
    if (!(a > 0.0) || !(a <= 1.0) || !std::isfinite(a)) {
      throw ConstraintError("alpha must lie in (0, 1], got " + std::to_string(a));
    }
  }

  /// Length of the transformed interval [0, pi^alpha/alpha].
  [[nodiscard]] double T() const { return std::pow(kPi, value) / value; }

  /// Asymptotic eigenvalue gap alpha * pi^(1-alpha); also the base frequency in t.
  [[nodiscard]] double beta() const { return value * std::pow(kPi, 1.0 - value); }

  friend bool operator==(const AlphaOrder& a, const AlphaOrder& b) { return a.value == b.value; }
};

/// t = x^alpha / alpha; maps [0, pi] onto [0, pi^alpha/alpha] and turns the
/// fractional derivative into d/dt.
inline double to_transformed(double x, AlphaOrder alpha) {
  if (!(x >= 0.0) || !(x <= kPi + 1e-12)) {
    throw ConstraintError("x outside [0, pi]: " + std::to_string(x));
  }
  return std::pow(x, alpha.value) / alpha.value;
}

inline double from_transformed(double t, AlphaOrder alpha) {
  if (t < 0.0) throw ConstraintError("transformed coordinate must be >= 0");
  return std::pow(alpha.value * t, 1.0 / alpha.value);
}

}  // namespace confnodal
