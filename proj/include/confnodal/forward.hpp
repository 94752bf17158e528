#pragma once

#include <utility>
#include <vector>

#include "confnodal/model.hpp"

namespace confnodal {

enum class ShotDirection { kForwardFromZero, kBackwardFromPi };

/// One integration of the pencil equation at fixed lambda: samples of the
/// solution y and of D^alpha y on the reporting grid.
struct ShotSolution {
  double lambda;
  ShotDirection direction;
  GridFunction y;
  GridFunction dy;
};

struct SolverOptions {
  std::size_t grid_points = 4001;  // reporting grid; also the minimum step count
  double lambda_cap = 500.0;
  double steps_per_wave = 1024.0;  // RK4 substeps per oscillation period
};

/// Fixed-step RK4 integrator for y'' = (2 lambda p + q - lambda^2) y in the
/// t-coordinate, with the potentials tabulated at half steps. The step count
/// is a multiple of grid_points-1 sized so the largest |lambda| of interest
/// keeps ~steps_per_wave substeps per period.
class Shooter {
 public:
  Shooter(const PotentialPair& pp, double lambda_max, SolverOptions opt = {});

  [[nodiscard]] std::size_t steps() const { return steps_; }
  [[nodiscard]] const SolverOptions& options() const { return opt_; }

  /// Terminal (y, y') of the forward shot with y(0)=0, y'(0)=1.
  [[nodiscard]] std::pair<double, double> terminal(double lambda) const;

  [[nodiscard]] double delta(double lambda) const { return terminal(lambda).first; }

  /// Full shot downsampled onto the reporting grid.
  [[nodiscard]] ShotSolution shot(double lambda,
                                  ShotDirection dir = ShotDirection::kForwardFromZero) const;

  /// Interior zeros of the forward shot in t, refined on the full-resolution
  /// samples; crossings within margin_t of either endpoint are discarded.
  [[nodiscard]] std::vector<double> node_positions(double lambda, double margin_t) const;

 private:
  void integrate(double lambda, bool backward, std::vector<double>* y_out,
                 std::vector<double>* v_out, double* y_end, double* v_end) const;

  const PotentialPair* pp_;
  SolverOptions opt_;
  std::size_t steps_;
  double h_;
  std::vector<double> ptab_, qtab_;  // values at t = k h/2, k = 0..2*steps
};

struct CharacteristicSample {
  double lambda;
  double delta;
};

ShotSolution shoot_S(const PotentialPair& pp, double lambda, const SolverOptions& opt = {});
ShotSolution shoot_psi(const PotentialPair& pp, double lambda, const SolverOptions& opt = {});

/// Delta(lambda) = S(pi, lambda). With cross_check set, the backward value
/// -psi(0, lambda) must agree to 1e-6 relative.
CharacteristicSample characteristic(const PotentialPair& pp, double lambda,
                                    const SolverOptions& opt = {}, bool cross_check = false);

/// S * D^a psi - psi * D^a S at each probe (constant in x).
std::vector<double> wronskian(const PotentialPair& pp, double lambda,
                              const std::vector<double>& x_probes, const SolverOptions& opt = {});

}  // namespace confnodal
