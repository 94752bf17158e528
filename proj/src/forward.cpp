#include "confnodal/forward.hpp"

#include <cmath>
#include <string>

namespace confnodal {

namespace {

std::size_t step_count(const PotentialPair& pp, double lambda_max, const SolverOptions& opt) {
  const double T = pp.T();
  const double waves = std::abs(lambda_max) * T / (2.0 * kPi);
  const auto base = opt.grid_points - 1;
  const auto needed = static_cast<std::size_t>(std::ceil(waves * opt.steps_per_wave));
  const std::size_t mult = (needed + base - 1) / base;
  return base * std::max<std::size_t>(1, mult);
}

}  // namespace

Shooter::Shooter(const PotentialPair& pp, double lambda_max, SolverOptions opt)
    : pp_(&pp), opt_(opt), steps_(step_count(pp, lambda_max, opt)), h_(pp.T() / static_cast<double>(steps_)) {
  if (std::abs(lambda_max) > opt_.lambda_cap) {
    throw NumericError("lambda " + std::to_string(lambda_max) + " exceeds the cap " +
                       std::to_string(opt_.lambda_cap) +
                       " (raise lambda_cap and expect grid refinement)");
  }
  ptab_.resize(2 * steps_ + 1);
  qtab_.resize(2 * steps_ + 1);
  for (std::size_t k = 0; k <= 2 * steps_; ++k) {
    const double t = 0.5 * h_ * static_cast<double>(k);
    ptab_[k] = pp.p_t(t);
    qtab_[k] = pp.q_t(t);
  }
}

void Shooter::integrate(double lambda, bool backward, std::vector<double>* y_out,
                        std::vector<double>* v_out, double* y_end, double* v_end) const {
  const double lam2 = lambda * lambda;
  const double h = backward ? -h_ : h_;
  double y = 0.0, v = 1.0;
  if (y_out) {
    y_out->resize(steps_ + 1);
    v_out->resize(steps_ + 1);
    const std::size_t start = backward ? steps_ : 0;
    (*y_out)[start] = y;
    (*v_out)[start] = v;
  }
  for (std::size_t k = 0; k < steps_; ++k) {
    // table indices of t, t + h/2, t + h for this step
    std::size_t i0, i1, i2;
    if (!backward) {
      i0 = 2 * k;
      i1 = 2 * k + 1;
      i2 = 2 * k + 2;
    } else {
      i0 = 2 * (steps_ - k);
      i1 = i0 - 1;
      i2 = i0 - 2;
    }
    const double c0 = 2.0 * lambda * ptab_[i0] + qtab_[i0] - lam2;
    const double c1 = 2.0 * lambda * ptab_[i1] + qtab_[i1] - lam2;
    const double c2 = 2.0 * lambda * ptab_[i2] + qtab_[i2] - lam2;

    const double k1y = v, k1v = c0 * y;
    const double k2y = v + 0.5 * h * k1v, k2v = c1 * (y + 0.5 * h * k1y);
    const double k3y = v + 0.5 * h * k2v, k3v = c1 * (y + 0.5 * h * k2y);
    const double k4y = v + h * k3v, k4v = c2 * (y + h * k3y);
    y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (!std::isfinite(y) || !std::isfinite(v)) {
      const double t = backward ? pp_->T() + h * static_cast<double>(k + 1)
                                : h * static_cast<double>(k + 1);
      throw NumericError("integration overflow at lambda=" + std::to_string(lambda) +
                         ", t=" + std::to_string(t));
    }
    if (y_out) {
      const std::size_t idx = backward ? steps_ - k - 1 : k + 1;
      (*y_out)[idx] = y;
      (*v_out)[idx] = v;
    }
  }
  if (y_end) *y_end = y;
  if (v_end) *v_end = v;
}

std::pair<double, double> Shooter::terminal(double lambda) const {
  double y, v;
  integrate(lambda, false, nullptr, nullptr, &y, &v);
  return {y, v};
}

ShotSolution Shooter::shot(double lambda, ShotDirection dir) const {
  std::vector<double> ys, vs;
  integrate(lambda, dir == ShotDirection::kBackwardFromPi, &ys, &vs, nullptr, nullptr);
  const std::size_t n = opt_.grid_points;
  const std::size_t stride = steps_ / (n - 1);
  GridFunction y(pp_->alpha(), n), dy(pp_->alpha(), n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = ys[i * stride];
    dy[i] = vs[i * stride];
  }
  return ShotSolution{lambda, dir, std::move(y), std::move(dy)};
}

std::vector<double> Shooter::node_positions(double lambda, double margin_t) const {
  std::vector<double> ys, vs;
  integrate(lambda, false, &ys, &vs, nullptr, nullptr);
  const double T = pp_->T();
  std::vector<double> nodes;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (!(ys[i] * ys[i + 1] < 0.0)) continue;
    const double t_lo = h_ * static_cast<double>(i);
    if (t_lo < margin_t || t_lo + h_ > T - margin_t) continue;
    // bisection on the local cubic through samples i-1..i+2 (clamped)
    const auto base = static_cast<std::size_t>(
        std::clamp<long>(static_cast<long>(i) - 1, 0, static_cast<long>(ys.size()) - 4));
    auto interp = [&](double t) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        double w = 1.0;
        const double tk = h_ * static_cast<double>(base + k);
        for (std::size_t m = 0; m < 4; ++m) {
          if (m == k) continue;
          w *= (t - h_ * static_cast<double>(base + m)) / (tk - h_ * static_cast<double>(base + m));
        }
        acc += w * ys[base + k];
      }
      return acc;
    };
    double lo = t_lo, hi = t_lo + h_, flo = ys[i];
    for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = interp(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    nodes.push_back(0.5 * (lo + hi));
  }
  return nodes;
}

ShotSolution shoot_S(const PotentialPair& pp, double lambda, const SolverOptions& opt) {
  return Shooter(pp, lambda, opt).shot(lambda, ShotDirection::kForwardFromZero);
}

ShotSolution shoot_psi(const PotentialPair& pp, double lambda, const SolverOptions& opt) {
  return Shooter(pp, lambda, opt).shot(lambda, ShotDirection::kBackwardFromPi);
}

CharacteristicSample characteristic(const PotentialPair& pp, double lambda,
                                    const SolverOptions& opt, bool cross_check) {
  Shooter shooter(pp, lambda, opt);
  const double delta = shooter.delta(lambda);
  if (cross_check) {
    const ShotSolution psi = shooter.shot(lambda, ShotDirection::kBackwardFromPi);
    const double alt = -psi.y[0];
    const double scale = std::max({std::abs(delta), std::abs(alt), 1e-3});
    if (std::abs(delta - alt) > 1e-6 * scale) {
      throw NumericError("characteristic cross-check failed at lambda=" + std::to_string(lambda) +
                         ": " + std::to_string(delta) + " vs " + std::to_string(alt));
    }
  }
  return CharacteristicSample{lambda, delta};
}

std::vector<double> wronskian(const PotentialPair& pp, double lambda,
                              const std::vector<double>& x_probes, const SolverOptions& opt) {
  Shooter shooter(pp, lambda, opt);
  const ShotSolution s = shooter.shot(lambda, ShotDirection::kForwardFromZero);
  const ShotSolution psi = shooter.shot(lambda, ShotDirection::kBackwardFromPi);
  std::vector<double> out;
  out.reserve(x_probes.size());
  for (double x : x_probes) {
    if (!(x > 0.0) || !(x < kPi)) throw ConstraintError("wronskian probes must lie in (0, pi)");
    const double t = to_transformed(x, pp.alpha());
    out.push_back(s.y.eval_t(t) * psi.dy.eval_t(t) - psi.y.eval_t(t) * s.dy.eval_t(t));
  }
  return out;
}

}  // namespace confnodal
