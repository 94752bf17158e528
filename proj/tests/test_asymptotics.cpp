#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "confnodal/asymptotics.hpp"
#include "confnodal/forward.hpp"
#include "doctest.h"

using namespace confnodal;

namespace {

double numeric_S(const PotentialPair& pp, double x, double lambda) {
  const ShotSolution sol = shoot_S(pp, lambda);
  return sol.y.eval_t(to_transformed(x, pp.alpha()));
}

}  // namespace

TEST_CASE("zero potential: every order reduces to sin(lambda t)/lambda") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("zero", a);
  for (double x : {0.8, 2.0, 3.0}) {
    const double t = to_transformed(x, a);
    for (double lambda : {3.0, 9.0}) {
      for (int order : {1, 2, 3}) {
        CHECK(S_expansion(pp, x, lambda, order) ==
              doctest::Approx(std::sin(lambda * t) / lambda).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("expansion error decays in lambda and improves with order") {
  const AlphaOrder a(0.75);
  const PotentialPair pp = preset_potential("bench-a", a);
  const double x = 2.2;
  std::vector<double> e2s;
  for (double lambda : {8.0, 16.0, 32.0}) {
    const double ref = numeric_S(pp, x, lambda);
    const double e1 = std::abs(S_expansion(pp, x, lambda, 1) - ref);
    const double e2 = std::abs(S_expansion(pp, x, lambda, 2) - ref);
    CHECK(e2 < e1);
    e2s.push_back(e2);
  }
  // order-2 truncation decays at least one power faster than order-1 overall
  CHECK(e2s.back() < e2s.front() / 4.0);
}

TEST_CASE("characteristic expansion tracks Delta near eigenvalues") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-b", a);
  for (int n : {10, 20, 40}) {
    const double lambda = static_cast<double>(n) * a.beta();
    const double ref = characteristic(pp, lambda).delta;
    const double err = std::abs(delta_expansion(pp, lambda, 2) - ref);
    CHECK(err < 0.5 / static_cast<double>(n * n));
  }
}

TEST_CASE("oscillatory coefficients vanish as n grows (Riemann-Lebesgue)") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-a", a);
  const CoefficientBundle cb = coefficients(pp, {8, 32, 128});
  CHECK(std::abs(cb.A_full(128)) < std::abs(cb.A_full(8)));
  CHECK(std::abs(cb.A_full(128)) < 1e-2);
  // A(n, x) stays uniformly bounded by the total variation scale
  for (double x : {0.5, 1.5, 3.0}) CHECK(std::abs(cb.A(32, x)) < 1.0);
}

TEST_CASE("order-3 fractional power ambiguity is flagged for alpha < 1") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-a", a);
  bool flagged = false;
  // p(x) - p(0) < 0 away from x=0, so the (.)^(1+alpha) base goes negative
  (void)S_expansion(pp, 2.5, 20.0, 3, &flagged);
  CHECK(flagged);
  bool flagged1 = false;
  const PotentialPair zero = preset_potential("zero", a);
  (void)S_expansion(zero, 2.5, 20.0, 3, &flagged1);
  CHECK_FALSE(flagged1);
}

TEST_CASE("lambdaS expansion matches lambda * numeric S at nodes scale") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-a", a);
  const CoefficientBundle cb = coefficients(pp, {15, 30});
  for (int n : {15, 30}) {
    const double lambda = static_cast<double>(n) * a.beta();
    for (double x : {1.0, 2.0, 2.8}) {
      const double ref = lambda * numeric_S(pp, x, lambda);
      const double err = std::abs(lambdaS_expansion(pp, cb, x, n) - ref);
      // the remainder carries the fractional-power terms: O(n^-(1+alpha))
      CHECK(err < 0.7 / std::pow(static_cast<double>(n), 1.5));
    }
  }
}
