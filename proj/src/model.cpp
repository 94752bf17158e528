#include "confnodal/model.hpp"

#include <cmath>
#include <string>

namespace confnodal {

double TrigSeries::value(double t, double w) const {
  double acc = c0;
  for (const auto& term : terms) {
    const double arg = static_cast<double>(term.k) * w * t;
    acc += term.coef * (term.sine ? std::sin(arg) : std::cos(arg));
  }
  return acc;
}

double TrigSeries::derivative(double t, double w) const {
  double acc = 0.0;
  for (const auto& term : terms) {
    const double kw = static_cast<double>(term.k) * w;
    const double arg = kw * t;
    acc += term.coef * kw * (term.sine ? std::cos(arg) : -std::sin(arg));
  }
  return acc;
}

double TrigSeries::antiderivative(double t, double w) const {
  double acc = c0 * t;
  for (const auto& term : terms) {
    const double kw = static_cast<double>(term.k) * w;
    const double arg = kw * t;
    acc += term.coef * (term.sine ? (1.0 - std::cos(arg)) : std::sin(arg)) / kw;
  }
  return acc;
}

void TrigSeries::remove_mean() {
  // mean of sin(k w t) over [0, T] with w T = pi is (1 - cos(k pi)) / (k pi);
  // cosine harmonics are mean-free already.
  for (const auto& term : terms) {
    if (term.sine) {
      c0 -= term.coef * (1.0 - std::cos(static_cast<double>(term.k) * kPi)) /
            (static_cast<double>(term.k) * kPi);
    }
  }
}

Profile Profile::trig(TrigSeries series) {
  Profile p;
  p.series_ = std::move(series);
  return p;
}

Profile Profile::grid(GridFunction samples) {
  Profile p;
  p.samples_deriv_ = samples.derivative();
  p.samples_cum_ = samples.cumulative();
  p.samples_ = std::move(samples);
  return p;
}

double Profile::value_t(double t, double w) const {
  return series_ ? series_->value(t, w) : samples_->eval_t(t);
}

double Profile::deriv_t(double t, double w) const {
  return series_ ? series_->derivative(t, w) : samples_deriv_->eval_t(t);
}

double Profile::anti_t(double t, double w) const {
  return series_ ? series_->antiderivative(t, w) : samples_cum_->eval_t(t);
}

PotentialPair::PotentialPair(AlphaOrder alpha, Profile p, Profile q, bool allow_zero_p)
    : alpha_(alpha), p_(std::move(p)), q_(std::move(q)) {
  const double w = alpha_.beta();
  const double T = alpha_.T();

  // d_alpha-mean of p: with t = x^alpha/alpha the measure becomes Lebesgue.
  p_mean_ = simpson([&](double t) { return p_.value_t(t, w); }, 0.0, T, 4096);
  if (std::abs(p_mean_) > 1e-8) {
    throw ConstraintError("p violates the zero d_alpha-mean constraint: mean = " +
                          std::to_string(p_mean_));
  }

  double vmin = 0.0, vmax = 0.0, var = 0.0, mean_s = 0.0;
  const std::size_t probes = 101;
  std::vector<double> samples(probes);
  for (std::size_t i = 0; i < probes; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(probes - 1);
    const double pv = p_.value_t(t, w);
    const double qv = q_.value_t(t, w);
    const double dpv = p_.deriv_t(t, w);
    if (!std::isfinite(pv) || !std::isfinite(qv) || !std::isfinite(dpv)) {
      throw ConstraintError("p, q, D^alpha p must be finite on [0, pi]");
    }
    samples[i] = pv;
    mean_s += pv;
    if (i == 0) vmin = vmax = pv;
    vmin = std::min(vmin, pv);
    vmax = std::max(vmax, pv);
  }
  mean_s /= static_cast<double>(probes);
  for (double s : samples) var += (s - mean_s) * (s - mean_s);
  var /= static_cast<double>(probes);
  if (var < 1e-14) {
    if (!allow_zero_p) {
      throw ConstraintError("constant p is not admissible (set the calibration override for p = 0)");
    }
    zero_p_ = true;
  }
}

double PotentialPair::a1() const {
  if (!a1_) {
    const double w = alpha_.beta();
    a1_ = simpson([&](double t) { double pv = p_.value_t(t, w); return q_.value_t(t, w) + pv * pv; },
                  0.0, T(), 8192);
  }
  return *a1_;
}

double PotentialPair::a2() const {
  if (!a2_) {
    const double w = alpha_.beta();
    a2_ = simpson(
        [&](double t) { double pv = p_.value_t(t, w); return (q_.value_t(t, w) + pv * pv) * pv; },
        0.0, T(), 8192);
  }
  return *a2_;
}

double capital_Q(const PotentialPair& pp, double x) {
  return pp.Q_t(to_transformed(x, pp.alpha()));
}

PotentialPair make_potential(AlphaOrder alpha, Profile p, Profile q, bool allow_zero_p) {
  return PotentialPair(alpha, std::move(p), std::move(q), allow_zero_p);
}

PotentialPair preset_potential(const std::string& name, AlphaOrder alpha) {
  const double a = alpha.value;
  if (name == "zero") {
    return PotentialPair(alpha, Profile::trig(TrigSeries{}), Profile::trig(TrigSeries{}), true);
  }
  if (name == "constq") {
    TrigSeries q;
    q.c0 = 1.0;
    return PotentialPair(alpha, Profile::trig(TrigSeries{}), Profile::trig(std::move(q)), true);
  }
  if (name == "bench-a") {
    TrigSeries p;
    p.terms.push_back({1, 0.2, false});
    TrigSeries q;
    q.terms.push_back({1, 0.1, true});
    q.c0 = 0.1 * a - 0.2 / kPi;  // pins (1/pi^alpha) int q d_alpha = 0.1
    return PotentialPair(alpha, Profile::trig(std::move(p)), Profile::trig(std::move(q)));
  }
  if (name == "bench-b") {
    TrigSeries p;
    p.terms.push_back({1, 0.15, false});
    p.terms.push_back({3, 0.08, false});
    TrigSeries q;
    q.c0 = 0.1;
    q.terms.push_back({2, 0.12, false});
    q.terms.push_back({1, 0.05, true});
    return PotentialPair(alpha, Profile::trig(std::move(p)), Profile::trig(std::move(q)));
  }
  throw ConfigError("unknown preset: " + name);
}

}  // namespace confnodal
