#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "confnodal/nodal.hpp"
#include "doctest.h"

using namespace confnodal;

TEST_CASE("zero potential nodes: (x_n^j)^alpha = j pi^alpha / n") {
  for (double av : {0.5, 0.75, 1.0}) {
    const AlphaOrder a(av);
    const PotentialPair pp = preset_potential("zero", a);
    for (int n : {2, 7, 20}) {
      const auto nodes = compute_nodes(pp, n, static_cast<double>(n) * a.beta());
      REQUIRE(static_cast<int>(nodes.size()) == n - 1);
      for (int j = 1; j < n; ++j) {
        const double want = static_cast<double>(j) * std::pow(kPi, av) / static_cast<double>(n);
        CHECK(std::abs(std::pow(nodes[j - 1], av) - want) < 1e-8);
      }
    }
  }
}

TEST_CASE("asymptotic nodes approach numeric nodes at 1/n^2 order") {
  for (const char* name : {"bench-a", "bench-b"}) {
    const AlphaOrder a(0.5);
    const PotentialPair pp = preset_potential(name, a);
    const std::vector<int> ns{12, 24, 48};
    const CoefficientBundle cb = coefficients(pp, ns);
    double prev = -1.0;
    for (int n : ns) {
      const SpectrumRecord rec = locate_eigenvalues(pp, n, n);
      const auto numeric = compute_nodes(pp, n, rec.at(n).lambda);
      const auto asym = asymptotic_nodes(pp, cb, n, 2);
      REQUIRE(numeric.size() == asym.size());
      double R = 0.0;
      for (std::size_t j = 0; j < numeric.size(); ++j) {
        R = std::max(R, std::abs(std::pow(asym[j], a.value) - std::pow(numeric[j], a.value)));
      }
      const double scaled = R * static_cast<double>(n) * static_cast<double>(n);
      CHECK(scaled < 1.0);
      if (prev >= 0.0) CHECK(R < prev);  // raw deviation shrinks with n
      prev = R;
    }
  }
}

TEST_CASE("order-1 truncation is coarser than order-2") {
  const AlphaOrder a(0.75);
  const PotentialPair pp = preset_potential("bench-a", a);
  const int n = 20;
  const CoefficientBundle cb = coefficients(pp, {n});
  const SpectrumRecord rec = locate_eigenvalues(pp, n, n);
  const auto numeric = compute_nodes(pp, n, rec.at(n).lambda);
  const auto o1 = asymptotic_nodes(pp, cb, n, 1);
  const auto o2 = asymptotic_nodes(pp, cb, n, 2);
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t j = 0; j < numeric.size(); ++j) {
    r1 = std::max(r1, std::abs(std::pow(o1[j], a.value) - std::pow(numeric[j], a.value)));
    r2 = std::max(r2, std::abs(std::pow(o2[j], a.value) - std::pow(numeric[j], a.value)));
  }
  CHECK(r2 < r1);
}

TEST_CASE("nodal dataset covers the interval densely") {
  const AlphaOrder a(1.0);
  const PotentialPair pp = preset_potential("bench-b", a);
  const SpectrumRecord rec = locate_eigenvalues(pp, 1, 12);
  const NodalSet set = nodal_dataset(pp, rec);
  REQUIRE(set.entries.size() == 12);
  CHECK(set.entries.at(1).empty());
  CHECK(set.entries.at(12).size() == 11);
  CHECK(set.max_union_gap < kPi / 6.0);
  for (const auto& [n, nodes] : set.entries) {
    for (std::size_t j = 1; j < nodes.size(); ++j) CHECK(nodes[j] > nodes[j - 1]);
  }
}
