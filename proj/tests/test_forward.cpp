#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "confnodal/forward.hpp"
#include "doctest.h"

using namespace confnodal;

TEST_CASE("zero potential: Delta(lambda) = sin(lambda T)/lambda") {
  for (double av : {0.5, 0.75, 1.0}) {
    const AlphaOrder a(av);
    const PotentialPair pp = preset_potential("zero", a);
    for (double lambda : {0.7, 2.0, 5.3, 11.0}) {
      const double want = std::sin(lambda * a.T()) / lambda;
      CHECK(characteristic(pp, lambda).delta == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("constant q=1, alpha=1: Delta = sin(sqrt(lambda^2-1) pi)/sqrt(lambda^2-1)") {
  const PotentialPair pp = preset_potential("constq", AlphaOrder(1.0));
  for (double lambda : {1.5, 3.0, 7.2}) {
    const double mu = std::sqrt(lambda * lambda - 1.0);
    CHECK(characteristic(pp, lambda).delta ==
          doctest::Approx(std::sin(mu * kPi) / mu).epsilon(1e-8));
  }
}

TEST_CASE("characteristic cross-check against the backward shot") {
  const PotentialPair pp = preset_potential("bench-a", AlphaOrder(0.5));
  for (double lambda : {1.1, 4.4, 9.7}) {
    CHECK_NOTHROW(characteristic(pp, lambda, {}, /*cross_check=*/true));
  }
}

TEST_CASE("wronskian is constant across probes and equals Delta") {
  const std::vector<double> probes{0.3, 0.9, 1.4, 2.0, 2.6, 3.0};
  for (const char* name : {"bench-a", "bench-b"}) {
    const PotentialPair pp = preset_potential(name, AlphaOrder(0.75));
    for (double lambda : {0.9, 3.7, 8.1}) {
      const std::vector<double> w = wronskian(pp, lambda, probes);
      const double delta = characteristic(pp, lambda).delta;
      const double scale = std::max(std::abs(delta), 1e-3);
      for (double v : w) CHECK(std::abs(v - delta) / scale < 1e-6);
    }
  }
}

TEST_CASE("node positions of the zero-potential shot are the sine zeros") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("zero", a);
  const double lambda = 6.0 * a.beta();  // 5 interior zeros at t = k T/6
  Shooter shooter(pp, lambda);
  const auto nodes = shooter.node_positions(lambda, 0.05 * a.T());
  REQUIRE(nodes.size() == 5);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    CHECK(nodes[k] ==
          doctest::Approx(static_cast<double>(k + 1) * a.T() / 6.0).epsilon(1e-10));
  }
}

TEST_CASE("lambda above the cap is rejected") {
  const PotentialPair pp = preset_potential("zero", AlphaOrder(1.0));
  SolverOptions opt;
  opt.lambda_cap = 50.0;
  CHECK_THROWS_AS(Shooter(pp, 60.0, opt), NumericError);
}
