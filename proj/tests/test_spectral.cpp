#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "confnodal/spectral.hpp"
#include "doctest.h"

using namespace confnodal;

TEST_CASE("zero potential eigenvalues are n beta") {
  for (double av : {0.5, 0.75, 1.0}) {
    const AlphaOrder a(av);
    const PotentialPair pp = preset_potential("zero", a);
    const SpectrumRecord rec = locate_eigenvalues(pp, 1, 20);
    REQUIRE(rec.entries.size() == 20);
    for (const auto& e : rec.entries) {
      CHECK(std::abs(e.lambda - static_cast<double>(e.n) * a.beta()) < 1e-8);
      CHECK(e.residual < 1e-9);
    }
  }
}

TEST_CASE("constq alpha=1: lambda_n near n + 1/(2n)") {
  const PotentialPair pp = preset_potential("constq", AlphaOrder(1.0));
  const SpectrumRecord rec = locate_eigenvalues(pp, 10, 40);
  for (const auto& e : rec.entries) {
    const double n = static_cast<double>(e.n);
    // exact value sqrt(n^2 + 1); the asymptotic form n + 1/(2n) is 2e-3 close
    CHECK(std::abs(e.lambda - std::sqrt(n * n + 1.0)) < 1e-8);
    CHECK(std::abs(e.lambda - (n + 0.5 / n)) < 2e-3);
  }
}

TEST_CASE("asymptotic guess reduces to n beta for zero potential") {
  const AlphaOrder a(0.75);
  const PotentialPair pp = preset_potential("zero", a);
  for (int n : {5, 12, 30}) {
    CHECK(eigenvalue_guess(pp, n) ==
          doctest::Approx(static_cast<double>(n) * a.beta()).epsilon(1e-12));
  }
}

TEST_CASE("guess error scales like 1/n^2 for bench presets") {
  for (double av : {0.5, 0.75}) {
    const AlphaOrder a(av);
    const PotentialPair pp = preset_potential("bench-a", a);
    const SpectrumRecord rec = locate_eigenvalues(pp, 10, 40);
    double worst = 0.0;
    for (const auto& e : rec.entries) {
      const double n = static_cast<double>(e.n);
      worst = std::max(worst, n * n * std::abs(e.lambda - e.guess));
    }
    CHECK(worst < 1.0);  // bounded scaled residual
  }
}

TEST_CASE("eigenvalues are strictly increasing") {
  const PotentialPair pp = preset_potential("bench-b", AlphaOrder(0.5));
  const SpectrumRecord rec = locate_eigenvalues(pp, 1, 25);
  for (std::size_t i = 1; i < rec.entries.size(); ++i) {
    CHECK(rec.entries[i].lambda > rec.entries[i - 1].lambda);
  }
}

TEST_CASE("eigenfunction of index n has n-1 interior sign changes") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-a", a);
  const SpectrumRecord rec = locate_eigenvalues(pp, 6, 6);
  const ShotSolution sol = eigenfunction(pp, rec.at(6));
  int crossings = 0;
  // skip the endpoint zeros
  for (std::size_t i = 21; i + 21 < sol.y.size(); ++i) {
    if (sol.y[i - 1] != 0.0 && sol.y[i - 1] * sol.y[i] < 0.0) ++crossings;
  }
  CHECK(crossings == 5);
}
