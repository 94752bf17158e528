#include "confnodal/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace confnodal {

namespace {

double a_full_quadrature(const PotentialPair& pp, int n) {
  const double beta = pp.beta();
  const auto panels = std::max<std::size_t>(2000, 32 * static_cast<std::size_t>(std::abs(n)));
  return simpson(
      [&](double t) {
        const double pv = pp.p_t(t);
        const double arg = 2.0 * static_cast<double>(n) * beta * t - 2.0 * pp.Q_t(t);
        return (pp.q_t(t) + pv * pv) * std::cos(arg) - pp.dp_t(t) * std::sin(arg);
      },
      0.0, pp.T(), panels);
}

double guess_impl(const PotentialPair& pp, int n, double a_nn) {
  const double a = pp.alpha().value;
  const double dn = static_cast<double>(n);
  return dn * pp.beta() + (pp.a1() - a_nn) / (2.0 * dn * kPi) +
         ((pp.p_pi() + pp.p0()) * pp.a1() + 2.0 * pp.a2()) /
             (4.0 * dn * dn * std::pow(kPi, 2.0 - a) * a);
}

/// Bisection to near machine precision, then a secant polish.
double refine_root(const Shooter& shooter, double lo, double hi, double flo) {
  for (int i = 0; i < 90 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = shooter.delta(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const SpectrumEntry& SpectrumRecord::at(int n) const {
  for (const auto& e : entries) {
    if (e.n == n) return e;
  }
  throw ConfigError("index " + std::to_string(n) + " absent from the spectrum record");
}

double eigenvalue_guess(const PotentialPair& pp, int n) {
  if (n == 0) throw ConstraintError("n must be nonzero");
  return guess_impl(pp, n, a_full_quadrature(pp, n));
}

double eigenvalue_guess(const PotentialPair& pp, const CoefficientBundle& cb, int n) {
  if (n == 0) throw ConstraintError("n must be nonzero");
  return guess_impl(pp, n, cb.A_full(n));
}

SpectrumRecord locate_eigenvalues(const PotentialPair& pp, int n_min, int n_max,
                                  const SolverOptions& opt) {
  if (n_min > n_max || n_min == 0 || n_max == 0 || (n_min < 0) != (n_max < 0)) {
    throw ConfigError("eigenvalue range must be a nonzero same-sign interval");
  }
  const double beta = pp.beta();
  const int n_big = std::max(std::abs(n_min), std::abs(n_max));
  const double lambda_max = std::abs(guess_impl(pp, n_big, 0.0)) + beta;
  Shooter shooter(pp, lambda_max, opt);

  SpectrumRecord rec;
  for (int n = n_min; n <= n_max; ++n) {
    if (n == 0) continue;
    const double guess = eigenvalue_guess(pp, n);
    double root = 0.0;
    bool found = false, sign_change = false;
    for (double half : {0.45 * beta, 0.499 * beta}) {
      double lo = guess - half, hi = guess + half;
      const double flo = shooter.delta(lo), fhi = shooter.delta(hi);
      if ((flo < 0.0) != (fhi < 0.0)) {
        root = refine_root(shooter, lo, hi, flo);
        found = sign_change = true;
        break;
      }
    }
    if (!found) {
      if (n < 0) {
        throw NumericError("no sign change of Delta near the guess for n=" + std::to_string(n));
      }
      // dense scan from 0 with zero counting to re-establish the index map
      std::vector<double> zeros;
      const double step = beta / 16.0;
      double prev_l = step / 2.0, prev_f = shooter.delta(prev_l);
      for (double l = prev_l + step; l <= guess + 0.5 * beta; l += step) {
        const double f = shooter.delta(l);
        if ((f < 0.0) != (prev_f < 0.0)) zeros.push_back(refine_root(shooter, prev_l, l, prev_f));
        if (std::abs(f) < 1e-12 && (f < 0.0) == (prev_f < 0.0)) {
          rec.warnings.push_back("near-double zero candidate at lambda=" + std::to_string(l) +
                                 " for n=" + std::to_string(n));
        }
        prev_l = l;
        prev_f = f;
      }
      if (static_cast<int>(zeros.size()) != n) {
        throw NumericError("indexing failure for n=" + std::to_string(n) + ": scan found " +
                           std::to_string(zeros.size()) + " zeros below the bracket");
      }
      root = zeros.back();
      sign_change = true;
      rec.warnings.push_back("bracket fallback: dense scan used for n=" + std::to_string(n));
    }
    if (n >= 1 && n <= 5) {
      // the asymptotic bracket is least trustworthy here: confirm the index
      // by counting zeros below the accepted root
      int count = 0;
      const double step = beta / 16.0;
      double prev = shooter.delta(step / 2.0);
      for (double l = step / 2.0 + step; l < root + 0.5 * beta; l += step) {
        const double f = shooter.delta(l);
        if ((f < 0.0) != (prev < 0.0)) ++count;
        prev = f;
      }
      if (count != n) {
        rec.warnings.push_back("zero count " + std::to_string(count) + " disagrees with index n=" +
                               std::to_string(n));
      }
    }
    const double residual = std::abs(shooter.delta(root));
    if (residual > 1e-9) {
      throw NumericError("eigenvalue residual " + std::to_string(residual) +
                         " above tolerance at n=" + std::to_string(n));
    }
    rec.entries.push_back(SpectrumEntry{n, root, guess, residual, sign_change});
  }

  for (std::size_t i = 1; i < rec.entries.size(); ++i) {
    if (!(rec.entries[i].lambda > rec.entries[i - 1].lambda)) {
      rec.warnings.push_back("non-monotone eigenvalues between n=" +
                             std::to_string(rec.entries[i - 1].n) + " and n=" +
                             std::to_string(rec.entries[i].n));
    }
  }
  return rec;
}

ShotSolution eigenfunction(const PotentialPair& pp, const SpectrumEntry& entry,
                           const SolverOptions& opt) {
  return Shooter(pp, entry.lambda, opt).shot(entry.lambda);
}

}  // namespace confnodal
