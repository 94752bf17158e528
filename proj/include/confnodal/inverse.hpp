#pragma once

#include <map>
#include <string>
#include <vector>

#include "confnodal/grid.hpp"
#include "confnodal/model.hpp"
#include "confnodal/nodal.hpp"

namespace confnodal {

/// Node data consumed by the reconstruction. With richardson set, the three
/// levels {n_use, 3 n_use/2, n_use2} must be present; otherwise the two
/// levels {n_use, n_use2}. n_use2 defaults to 2 n_use.
struct NodalInput {
  AlphaOrder alpha;
  std::map<int, std::vector<double>> nodes;  // x-coordinates, sorted
  int n_use = 100;
  int n_use2 = 0;  // 0 -> 2 * n_use
  bool richardson = true;

  [[nodiscard]] int level2() const { return n_use2 > 0 ? n_use2 : 2 * n_use; }
  [[nodiscard]] std::vector<int> levels() const;
  [[nodiscard]] const std::vector<double>& nodes_at(int n) const;
};

struct InverseOptions {
  std::size_t grid_points = 4001;
  int smoothing_window = 5;         // presmoother for Q before differentiation
  double denom_threshold = 0.3;     // |denominator| cut, fraction of its max
  int refine_passes = 2;            // mean-of-q fixed-point passes
  int a_points_per_period = 256;    // resolution of the oscillatory integrals
  /// Constant-recovery formula: kEmpirical drops the (p(pi)+p(0)) boundary
  /// terms (matches the numerically observed limits); kAsWritten keeps them.
  enum class MeanFormula { kEmpirical, kAsWritten } mean_formula = MeanFormula::kEmpirical;
  enum class Aggregation { kLeastSquares, kMedian } aggregation = Aggregation::kLeastSquares;
};

struct Step4Report {
  double mean_q = 0.0;        // (1/pi^alpha) int q d_alpha
  double median = 0.0;        // per-point median (dispersion diagnostic)
  double iqr = 0.0;           // interquartile range of per-point estimates
  std::size_t points = 0;     // well-conditioned grid points used
  bool degenerate = false;
};

struct ReconstructionResult {
  GridFunction Q, p, f, r, g, q;  // on the canonical t-grid
  double mean_q = 0.0;
  Step4Report step4;
  double r_mean_residual = 0.0;  // d_alpha-mean of r (should be ~0)
  double Q_end_residual = 0.0;   // |Q(pi)| (should be ~0)
  int passes_run = 0;
  double mean_change_last_pass = 0.0;
  std::vector<std::string> notes;
};

/// Step 1: the canonical node sequence converging to x at level n_use.
/// Returns (node, j); *clamped reports boundary clamping of j.
std::pair<double, int> select_node_sequence(const NodalInput& input, double x,
                                            bool* clamped = nullptr);

/// Limit approximants from the node data (Richardson-accelerated when enabled).
GridFunction recover_Q(const NodalInput& input, const InverseOptions& opt = {});
GridFunction recover_f(const NodalInput& input, const GridFunction& Q_rec,
                       const InverseOptions& opt = {});
GridFunction recover_g(const NodalInput& input, const GridFunction& Q_rec,
                       const GridFunction& f_rec, const GridFunction& q_est,
                       const InverseOptions& opt = {});

/// Steps 2-5 of the reconstruction algorithm.
GridFunction step2_p(const GridFunction& Q_rec, int smoothing_window = 5);
GridFunction step3_r(const GridFunction& f_rec, const GridFunction& p_rec);
Step4Report step4_mean_q(const GridFunction& g_rec, const GridFunction& r_rec,
                         const GridFunction& p_rec, const GridFunction& Q_rec,
                         const InverseOptions& opt = {});
GridFunction step5_q(const GridFunction& r_rec, double mean_q);

/// Full pipeline with the fixed-point refinement of the oscillatory terms.
ReconstructionResult reconstruct(const NodalInput& input, const InverseOptions& opt = {});

/// Relative L2 error against a reference, over the interior fraction of [0, pi]
/// (d_alpha weight; both functions on the same grid).
double interior_rel_error(const GridFunction& got, const GridFunction& want,
                          double interior = 0.90);

}  // namespace confnodal
