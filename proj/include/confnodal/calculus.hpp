#pragma once

#include <functional>

#include "confnodal/grid.hpp"

namespace confnodal {

using RealFn = std::function<double(double)>;

/// x^(1-alpha) f'(x) for a callable f; derivative by 5-point central
/// differences with a step shrunk near x=0. Requires x in (0, pi].
double frac_derivative(const RealFn& f_x, double x, AlphaOrder alpha);

/// Same for sampled data: d/dt on the uniform t-grid. At x=0 the value is a
/// one-sided limit; `limit_form` (if given) is set when that path is taken.
double frac_derivative(const GridFunction& f, double x, bool* limit_form = nullptr);

/// I_alpha f(x) = integral of s^(alpha-1) f(s) ds from 0 to x, computed after
/// the substitution t = s^alpha/alpha (no endpoint singularity remains).
double frac_integral(const RealFn& f_x, double x, AlphaOrder alpha, std::size_t panels = 2000);

double frac_integral(const GridFunction& f, double x);

struct IdentityReport {
  double lemma3;    // max |D^a I_a f - f|
  double lemma4;    // max |I_a D^a f - (f - f(0))|
  double by_parts;  // alpha-integration-by-parts residual against partner cos(x)
};

/// Residuals of the basic calculus identities on an npts-point probe grid.
IdentityReport check_calculus_identities(const RealFn& f_x, AlphaOrder alpha,
                                         std::size_t npts = 4001);

}  // namespace confnodal
