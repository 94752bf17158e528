#pragma once

#include <map>
#include <vector>

#include "confnodal/spectral.hpp"

namespace confnodal {

enum class NodeProvenance { kNumeric, kAsymptotic };

/// Per-index sorted interior zeros of the eigenfunctions, in x.
struct NodalSet {
  AlphaOrder alpha;
  std::map<int, std::vector<double>> entries;
  NodeProvenance provenance = NodeProvenance::kNumeric;
  double max_union_gap = 0.0;  // density report over the union of all node lists
};

/// Numeric nodes of the n-th eigenfunction (|n|-1 of them).
std::vector<double> compute_nodes(const PotentialPair& pp, int n, double lambda_n,
                                  const SolverOptions& opt = {});

/// Nodes from the asymptotic formula, resolved by two fixed-point passes.
/// order 2 keeps terms through 1/n^2; order 3 adds the 1/n^3 bracket.
std::vector<double> asymptotic_nodes(const PotentialPair& pp, const CoefficientBundle& cb, int n,
                                     int order = 2);

/// Numeric nodes for all indices in the located spectrum, with the density report.
NodalSet nodal_dataset(const PotentialPair& pp, const SpectrumRecord& spectrum,
                       const SolverOptions& opt = {});

}  // namespace confnodal
