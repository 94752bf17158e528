#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "confnodal/calculus.hpp"
#include "confnodal/grid.hpp"

namespace confnodal {

/// Trigonometric profile c0 + sum c_k cos(k w t) + s_k sin(k w t) in the
/// t-coordinate, with w = alpha pi^(1-alpha) so each harmonic completes k/2
/// full periods over [0, pi]. Closed antiderivative and derivative.
struct TrigSeries {
  struct Harmonic {
    int k;
    double coef;
    bool sine;
  };
  double c0 = 0.0;
  std::vector<Harmonic> terms;

  [[nodiscard]] double value(double t, double w) const;
  [[nodiscard]] double derivative(double t, double w) const;
  [[nodiscard]] double antiderivative(double t, double w) const;  // from 0

  /// Shift c0 so the mean over [0, T] vanishes (w T = pi).
  void remove_mean();
};

/// A potential profile: either an analytic trig series or sampled data.
class Profile {
 public:
  static Profile trig(TrigSeries series);
  static Profile grid(GridFunction samples);

  [[nodiscard]] bool analytic() const { return series_.has_value(); }
  [[nodiscard]] double value_t(double t, double w) const;
  [[nodiscard]] double deriv_t(double t, double w) const;  // equals D^alpha at x(t)
  [[nodiscard]] double anti_t(double t, double w) const;   // integral from 0

 private:
  Profile() = default;
  std::optional<TrigSeries> series_;
  std::optional<GridFunction> samples_;
  std::optional<GridFunction> samples_deriv_, samples_cum_;
};

/// The pair (p, q) with order alpha. Construction validates the zero
/// d_alpha-mean of p and rejects constant p unless the calibration override
/// is set (p identically 0 is then permitted).
class PotentialPair {
 public:
  PotentialPair(AlphaOrder alpha, Profile p, Profile q, bool allow_zero_p = false);

  [[nodiscard]] AlphaOrder alpha() const { return alpha_; }
  [[nodiscard]] double T() const { return alpha_.T(); }
  [[nodiscard]] double beta() const { return alpha_.beta(); }
  [[nodiscard]] bool zero_p() const { return zero_p_; }

  [[nodiscard]] double p_t(double t) const { return p_.value_t(t, alpha_.beta()); }
  [[nodiscard]] double q_t(double t) const { return q_.value_t(t, alpha_.beta()); }
  [[nodiscard]] double dp_t(double t) const { return p_.deriv_t(t, alpha_.beta()); }
  [[nodiscard]] double Q_t(double t) const { return p_.anti_t(t, alpha_.beta()); }

  [[nodiscard]] double p_x(double x) const { return p_t(to_transformed(x, alpha_)); }
  [[nodiscard]] double q_x(double x) const { return q_t(to_transformed(x, alpha_)); }
  [[nodiscard]] double p0() const { return p_t(0.0); }
  [[nodiscard]] double p_pi() const { return p_t(T()); }

  /// d_alpha-mean of p computed at construction (the validation report).
  [[nodiscard]] double p_mean() const { return p_mean_; }

  /// Cached coefficients a1 = int (q + p^2) d_a, a2 = int (q + p^2) p d_a.
  [[nodiscard]] double a1() const;
  [[nodiscard]] double a2() const;

 private:
  AlphaOrder alpha_;
  Profile p_, q_;
  bool zero_p_ = false;
  double p_mean_ = 0.0;
  mutable std::optional<double> a1_, a2_;
};

/// Q(x) = I_alpha p from 0 to x (Eq. 10-style phase function); Q(pi) = 0.
double capital_Q(const PotentialPair& pp, double x);

PotentialPair make_potential(AlphaOrder alpha, Profile p, Profile q, bool allow_zero_p = false);

/// Named presets used by the CLI and the test harness.
///   zero    : p = 0, q = 0 (calibration override)
///   constq  : p = 0, q = 1 (calibration override)
///   bench-a : p = 0.2 cos(w t), q = 0.1 sin(w t) + c0 with d_alpha-mean(q)/pi^alpha = 0.1
///   bench-b : p = 0.15 cos(w t) + 0.08 cos(3 w t), q = 0.1 + 0.12 cos(2 w t) + 0.05 sin(w t)
PotentialPair preset_potential(const std::string& name, AlphaOrder alpha);

}  // namespace confnodal
