#pragma once

#include <string>
#include <vector>

#include "confnodal/asymptotics.hpp"
#include "confnodal/forward.hpp"

namespace confnodal {

struct SpectrumEntry {
  int n;
  double lambda;
  double guess;     // asymptotic starting value
  double residual;  // |Delta(lambda)|
  bool sign_change;
};

struct SpectrumRecord {
  std::vector<SpectrumEntry> entries;
  std::vector<std::string> warnings;

  [[nodiscard]] const SpectrumEntry& at(int n) const;
};

/// Asymptotic eigenvalue: n beta + (a1 - A_n^n)/(2 n pi)
///                        + ((p(pi)+p(0)) a1 + 2 a2)/(4 n^2 pi^(2-alpha) alpha).
double eigenvalue_guess(const PotentialPair& pp, int n);
double eigenvalue_guess(const PotentialPair& pp, const CoefficientBundle& cb, int n);

/// Bracket each guess by +-~half the asymptotic gap, verify a sign change of
/// Delta and bisect; falls back to a dense scan with zero counting when the
/// bracket fails or for small n.
SpectrumRecord locate_eigenvalues(const PotentialPair& pp, int n_min, int n_max,
                                  const SolverOptions& opt = {});

ShotSolution eigenfunction(const PotentialPair& pp, const SpectrumEntry& entry,
                           const SolverOptions& opt = {});

}  // namespace confnodal
