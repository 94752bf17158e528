#pragma once

#include <string>
#include <vector>

#include "confnodal/inverse.hpp"
#include "confnodal/nodal.hpp"
#include "confnodal/spectral.hpp"

namespace confnodal {

inline constexpr int kSchemaVersion = 1;

struct Thresholds {
  double p_rel = 0.10;
  double q_rel = 0.15;
  double mean_rel = 0.15;
};

/// Fully-defaulted, deterministic run configuration. Parsed from a JSON file
/// or assembled from CLI flags; the resolved form is echoed next to outputs.
struct RunConfig {
  double alpha = 1.0;
  std::string preset = "bench-a";
  bool custom_potential = false;  // when set, p/q series replace the preset
  TrigSeries p_series, q_series;
  bool allow_zero_p = false;

  std::size_t grid_points = 4001;
  int n_min = 1;
  int n_max = 10;
  int n_use = 100;
  int n_use2 = 0;  // 0 -> 2 * n_use
  bool richardson = true;
  bool refine = false;  // double the grid
  bool cross_check = false;
  bool emit_shots = false;
  std::string out_dir = ".";
  std::vector<int> sweep{50, 100, 200};
  Thresholds thresholds;
  int smoothing_window = 5;
  int refine_passes = 2;

  static RunConfig from_json_text(const std::string& text, const std::string& source = "<inline>");
  static RunConfig from_file(const std::string& path);

  /// CONFNODAL_GRID (positive integer) overrides grid_points.
  void apply_env();

  [[nodiscard]] std::string echo_json() const;
  [[nodiscard]] PotentialPair potential() const;
  [[nodiscard]] SolverOptions solver_options() const;
  [[nodiscard]] InverseOptions inverse_options() const;
  [[nodiscard]] std::size_t effective_grid() const;
};

// Interchange serialization (exposed for golden-file tests).
std::string nodes_to_json(const NodalSet& set);
NodalSet nodes_from_json_text(const std::string& text);
std::string spectrum_to_csv(const SpectrumRecord& record);
std::string shots_to_csv(const std::vector<ShotSolution>& shots);
std::string reconstruction_to_csv(const ReconstructionResult& res);
std::string diagnostics_to_json(const RunConfig& cfg, const ReconstructionResult& res);

/// Commands. Each writes its artifacts plus config_echo.json into
/// cfg.out_dir and returns 0; failures are reported by exception.
void cmd_forward(const RunConfig& cfg);
void cmd_spectrum(const RunConfig& cfg);
void cmd_nodes(const RunConfig& cfg);
void cmd_invert(const RunConfig& cfg, const std::string& nodes_path);
void cmd_roundtrip(const RunConfig& cfg);
void cmd_selftest(const RunConfig& cfg);

/// Dispatch by command name, mapping exceptions onto the exit-code taxonomy
/// (0 ok, 1 config, 2 constraint, 3 numeric, 4 acceptance). error_message and
/// report_json (the command's primary JSON artifact) may be null.
int run_command(const RunConfig& cfg, const std::string& command, const std::string& nodes_path,
                std::string* error_message, std::string* report_json);

}  // namespace confnodal
