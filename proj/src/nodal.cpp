#include "confnodal/nodal.hpp"

#include <algorithm>
#include <cmath>

namespace confnodal {

std::vector<double> compute_nodes(const PotentialPair& pp, int n, double lambda_n,
                                  const SolverOptions& opt) {
  const int count = std::abs(n) - 1;
  if (count == 0) return {};
  Shooter shooter(pp, lambda_n, opt);
  // exclude the endpoint neighborhoods: the true nodes sit ~T/|n| apart and
  // the terminal zero at t=T must not be picked up
  const double margin = 0.3 * pp.T() / static_cast<double>(std::abs(n));
  const std::vector<double> t_nodes = shooter.node_positions(lambda_n, margin);
  if (static_cast<int>(t_nodes.size()) != count) {
    throw NumericError("nodal count mismatch for n=" + std::to_string(n) + ": expected " +
                       std::to_string(count) + ", found " + std::to_string(t_nodes.size()) +
                       " (grid likely under-resolved; refine the grid)");
  }
  std::vector<double> nodes;
  nodes.reserve(t_nodes.size());
  for (double t : t_nodes) nodes.push_back(from_transformed(t, pp.alpha()));
  return nodes;
}

std::vector<double> asymptotic_nodes(const PotentialPair& pp, const CoefficientBundle& cb, int n,
                                     int order) {
  if (order < 1 || order > 3) throw ConfigError("asymptotic node order must be 1, 2 or 3");
  const int count = std::abs(n) - 1;
  if (count == 0) return {};
  const double a = pp.alpha().value;
  const double beta = pp.beta();
  const double pia = std::pow(kPi, a);
  const double dn = static_cast<double>(n);
  const double c2 = a / (2.0 * dn * dn * beta * beta);       // 1/(2 n^2 pi^(2-2a) a)
  const double c3 = a / (2.0 * dn * dn * dn * beta * beta * beta);  // 1/(2 n^3 pi^(3-3a) a^2)
  const double a1 = cb.a1(), a2 = cb.a2();
  const double bsum = pp.p_pi() + pp.p0();

  std::vector<double> nodes(count);
  for (int j = 1; j <= count; ++j) {
    double X = static_cast<double>(j) * pia / dn;  // leading term seeds the fixed point
    for (int pass = 0; pass < 2; ++pass) {
      const double t = std::clamp(X / a, 0.0, pp.T());
      double next = static_cast<double>(j) * pia / dn + a * pp.Q_t(t) / (dn * beta);
      if (order >= 2) {
        next += c2 * (cb.G1_t(t) - a1 * X / pia - (cb.A_t(n, t) - cb.A_full(n) * X / pia));
      }
      if (order >= 3) {
        next += c3 * (cb.G2_t(t) - (a2 + 0.5 * bsum * a1) * X / pia);
      }
      X = next;
    }
    if (!(X > 0.0) || !(X < pia)) {
      throw NumericError("asymptotic node fixed point left (0, pi) for n=" + std::to_string(n) +
                         ", j=" + std::to_string(j));
    }
    nodes[static_cast<std::size_t>(j - 1)] = std::pow(X, 1.0 / a);
  }
  return nodes;
}

NodalSet nodal_dataset(const PotentialPair& pp, const SpectrumRecord& spectrum,
                       const SolverOptions& opt) {
  NodalSet set{pp.alpha(), {}, NodeProvenance::kNumeric, 0.0};
  std::vector<double> all_nodes{0.0, kPi};
  for (const auto& entry : spectrum.entries) {
    if (std::abs(entry.n) < 2) {
      set.entries[entry.n] = {};
      continue;
    }
    auto nodes = compute_nodes(pp, entry.n, entry.lambda, opt);
    all_nodes.insert(all_nodes.end(), nodes.begin(), nodes.end());
    set.entries[entry.n] = std::move(nodes);
  }
  std::sort(all_nodes.begin(), all_nodes.end());
  for (std::size_t i = 0; i + 1 < all_nodes.size(); ++i) {
    set.max_union_gap = std::max(set.max_union_gap, all_nodes[i + 1] - all_nodes[i]);
  }
  return set;
}

}  // namespace confnodal
