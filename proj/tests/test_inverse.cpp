#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "confnodal/inverse.hpp"
#include "confnodal/nodal.hpp"
#include "doctest.h"

using namespace confnodal;

namespace {

struct ExactLimits {
  GridFunction Q, f, g;
};

// The limit functions reconstructed by the algorithm, computed here directly
// from the true potentials by quadrature (isolates the step algebra from the
// finite-n truncation).
ExactLimits exact_limits(const PotentialPair& pp, std::size_t npts) {
  const AlphaOrder a = pp.alpha();
  const double pia = std::pow(kPi, a.value);
  const GridFunction G1 =
      GridFunction::sample_t(a, npts,
                             [&](double t) {
                               const double pv = pp.p_t(t);
                               return pp.q_t(t) + pv * pv;
                             })
          .cumulative();
  const GridFunction G2 =
      GridFunction::sample_t(a, npts,
                             [&](double t) {
                               const double pv = pp.p_t(t);
                               return (pp.q_t(t) + pv * pv) * pv;
                             })
          .cumulative();
  ExactLimits out{GridFunction(a, npts), GridFunction(a, npts), GridFunction(a, npts)};
  for (std::size_t i = 0; i < npts; ++i) {
    const double X = a.value * out.Q.t(i);
    out.Q[i] = pp.Q_t(out.Q.t(i));
    out.f[i] = G1[i] - pp.a1() * X / pia;
    out.g[i] = G2[i] - pp.a2() * X / pia;
  }
  return out;
}

NodalInput nodal_input_for(const PotentialPair& pp, int n_use, bool richardson) {
  NodalInput input{pp.alpha(), {}, n_use, 0, richardson};
  std::set<int> levels;
  for (int m : input.levels()) levels.insert(m);
  for (int m : levels) {
    const SpectrumRecord rec = locate_eigenvalues(pp, m, m);
    input.nodes[m] = compute_nodes(pp, m, rec.at(m).lambda);
  }
  return input;
}

}  // namespace

TEST_CASE("canonical node sequence selection") {
  const PotentialPair pp = preset_potential("zero", AlphaOrder(1.0));
  NodalInput input{pp.alpha(), {}, 10, 0, false};
  input.nodes[10] = compute_nodes(pp, 10, 10.0 * pp.beta());
  auto [node, j] = select_node_sequence(input, kPi / 2.0);
  CHECK(j == 5);
  CHECK(node == doctest::Approx(kPi / 2.0).epsilon(1e-9));
  bool clamped = false;
  (void)select_node_sequence(input, 0.0, &clamped);
  CHECK(clamped);
}

TEST_CASE("exact-limit isolation: steps 2-5 recover p and q") {
  for (double av : {0.5, 1.0}) {
    const AlphaOrder a(av);
    const PotentialPair pp = preset_potential("bench-a", a);
    const std::size_t npts = 4001;
    const ExactLimits lim = exact_limits(pp, npts);

    const GridFunction p_rec = step2_p(lim.Q, /*smoothing_window=*/1);
    const GridFunction r_rec = step3_r(lim.f, p_rec);
    const Step4Report rep = step4_mean_q(lim.g, r_rec, p_rec, lim.Q);
    REQUIRE_FALSE(rep.degenerate);
    const GridFunction q_rec = step5_q(r_rec, rep.mean_q);

    GridFunction p_true(a, npts), q_true(a, npts);
    for (std::size_t i = 0; i < npts; ++i) {
      p_true[i] = pp.p_t(p_true.t(i));
      q_true[i] = pp.q_t(q_true.t(i));
    }
    CHECK(interior_rel_error(p_rec, p_true) < 1e-4);
    CHECK(interior_rel_error(q_rec, q_true) < 1e-4);
    CHECK(rep.mean_q == doctest::Approx(0.1).epsilon(1e-3));
    // r is mean-free by construction
    CHECK(std::abs(av * r_rec.integral() / std::pow(kPi, av)) < 1e-10);
  }
}

TEST_CASE("recover_Q converges to the true phase") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-a", a);
  double prev = -1.0;
  for (int n_use : {25, 50}) {
    const NodalInput input = nodal_input_for(pp, n_use, /*richardson=*/false);
    const GridFunction Q = recover_Q(input);
    double err = 0.0;
    for (std::size_t i = 0; i < Q.size(); ++i) {
      err = std::max(err, std::abs(Q[i] - pp.Q_t(Q.t(i))));
    }
    CHECK(err < 2.0 / n_use);
    if (prev >= 0.0) CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("zero-potential input degenerates in step 4 but keeps partial output") {
  const PotentialPair pp = preset_potential("zero", AlphaOrder(1.0));
  const NodalInput input = nodal_input_for(pp, 10, /*richardson=*/true);
  const ReconstructionResult res = reconstruct(input);
  CHECK(res.step4.degenerate);
  CHECK(res.mean_q == 0.0);
  for (std::size_t i = 0; i < res.Q.size(); i += 200) {
    CHECK(std::abs(res.Q[i]) < 1e-6);
    CHECK(std::abs(res.f[i]) < 1e-4);
  }
  REQUIRE_FALSE(res.notes.empty());
}

TEST_CASE("truncated nodal input names the missing index") {
  const AlphaOrder a(0.5);
  NodalInput input{a, {}, 16, 0, true};
  for (int j = 1; j < 16; ++j) {
    input.nodes[16].push_back(static_cast<double>(j) * kPi / 16.0);  // levels 24, 32 missing
  }
  CHECK_THROWS_WITH_AS(reconstruct(input), doctest::Contains("24"), ConstraintError);
}

TEST_CASE("round trip at moderate n_use meets loose thresholds") {
  const AlphaOrder a(0.5);
  const PotentialPair pp = preset_potential("bench-a", a);
  const NodalInput input = nodal_input_for(pp, 50, /*richardson=*/true);
  const ReconstructionResult res = reconstruct(input);
  GridFunction p_true(a, res.p.size()), q_true(a, res.q.size());
  for (std::size_t i = 0; i < p_true.size(); ++i) {
    p_true[i] = pp.p_t(p_true.t(i));
    q_true[i] = pp.q_t(q_true.t(i));
  }
  CHECK(interior_rel_error(res.p, p_true) < 0.02);
  CHECK(interior_rel_error(res.q, q_true) < 0.10);
  CHECK(res.mean_q == doctest::Approx(0.1).epsilon(0.10));
  CHECK(std::abs(res.Q_end_residual) < 1e-6);
}
