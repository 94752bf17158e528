#pragma once

#include <map>
#include <vector>

#include "confnodal/forward.hpp"
#include "confnodal/model.hpp"

namespace confnodal {

/// Cumulative tables of the oscillatory integrals at frequency 2 n beta:
/// integrals from 0 of (q+p^2) cos/sin(2 n beta t - 2Q) and of
/// (D^alpha p) cos/sin(2 n beta t - 2Q), in the t-coordinate.
struct OscTables {
  GridFunction c_qp, s_qp, c_dp, s_dp;
};

/// The integral functionals entering every expansion: a1, a2, the oscillatory
/// A_n(x), and the n-independent cumulatives of q+p^2 and (q+p^2)p.
class CoefficientBundle {
 public:
  CoefficientBundle(const PotentialPair& pp, std::vector<int> n_list,
                    int points_per_period = 64);

  [[nodiscard]] const PotentialPair& pair() const { return *pp_; }
  [[nodiscard]] double a1() const { return pp_->a1(); }
  [[nodiscard]] double a2() const { return pp_->a2(); }

  /// A_n evaluated with upper limit x (A_n^j is A(n, x_n^j)).
  [[nodiscard]] double A(int n, double x) const;
  [[nodiscard]] double A_t(int n, double t) const;
  [[nodiscard]] double A_full(int n) const;  // upper limit pi

  [[nodiscard]] double G1_t(double t) const { return G1c_.eval_t(t); }  // int (q+p^2)
  [[nodiscard]] double G2_t(double t) const { return G2c_.eval_t(t); }  // int (q+p^2)p

  [[nodiscard]] const OscTables& osc(int n) const;

 private:
  const PotentialPair* pp_;
  int ppp_;
  GridFunction G1c_, G2c_;
  mutable std::map<int, OscTables> osc_;  // extended lazily; not thread-safe while growing
};

CoefficientBundle coefficients(const PotentialPair& pp, const std::vector<int>& n_list,
                               int points_per_period = 64);

/// Large-lambda expansion of S(x, lambda), truncated at 1/lambda^order
/// (order in {1,2,3}). The order-3 bracket contains fractional powers of
/// p(x) +- p(0); a negative base sets *ambiguity and is evaluated as
/// sign(base)|base|^(1+alpha).
double S_expansion(const PotentialPair& pp, double x, double lambda, int order,
                   bool* ambiguity = nullptr);

/// The same expansion at x = pi (the characteristic function).
double delta_expansion(const PotentialPair& pp, double lambda, int order,
                       bool* ambiguity = nullptr);

/// Expansion of lambda_n S(x, lambda_n) through 1/n^2; its sign changes
/// define the asymptotic nodes.
double lambdaS_expansion(const PotentialPair& pp, const CoefficientBundle& cb, double x, int n,
                         bool* ambiguity = nullptr);

}  // namespace confnodal
