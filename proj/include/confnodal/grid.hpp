#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "confnodal/common.hpp"

namespace confnodal {

/// Samples of a function on the uniform t-grid over [0, pi^alpha/alpha].
/// Interpolation is local cubic (4-point Lagrange); differentiation and
/// cumulative integration are 4th-order finite-difference/Newton-Cotes rules.
class GridFunction {
 public:
  GridFunction(AlphaOrder alpha, std::size_t npts);

  /// Sample f given in the t-coordinate.
  static GridFunction sample_t(AlphaOrder alpha, std::size_t npts,
                               const std::function<double(double)>& f_t);
  /// Sample f given in the original x-coordinate.
  static GridFunction sample_x(AlphaOrder alpha, std::size_t npts,
                               const std::function<double(double)>& f_x);

  [[nodiscard]] AlphaOrder alpha() const { return alpha_; }
  [[nodiscard]] std::size_t size() const { return v_.size(); }
  [[nodiscard]] double T() const { return T_; }
  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] double t(std::size_t i) const { return h_ * static_cast<double>(i); }
  [[nodiscard]] double x(std::size_t i) const { return from_transformed(t(i), alpha_); }

  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  [[nodiscard]] const std::vector<double>& values() const { return v_; }

  /// Local cubic interpolation at t in [0, T].
  [[nodiscard]] double eval_t(double t) const;
  [[nodiscard]] double eval_x(double x) const { return eval_t(to_transformed(x, alpha_)); }

  /// d/dt on the grid: 5-point 4th-order stencil, one-sided at the ends.
  [[nodiscard]] GridFunction derivative() const;

  /// Cumulative integral from 0: per-cell integration of the local cubic.
  [[nodiscard]] GridFunction cumulative() const;

  [[nodiscard]] double integral() const;

  /// Centered moving average; window <= 1 is the identity.
  [[nodiscard]] GridFunction smoothed(int window) const;

 private:
  AlphaOrder alpha_;
  double T_, h_;
  std::vector<double> v_;
};

/// Composite Simpson of a scalar function over [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels);

/// Cubic interpolating spline with not-a-knot end conditions, for scattered
/// strictly increasing knots (used for node-sequence data).
class CubicSpline {
 public:
  CubicSpline(std::vector<double> xs, std::vector<double> ys);
  [[nodiscard]] double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the knots
};

}  // namespace confnodal
