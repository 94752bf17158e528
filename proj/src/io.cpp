#include "confnodal/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace confnodal {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  out << content;
}

TrigSeries series_from_json(const nlohmann::json& j, const std::string& where) {
  TrigSeries s;
  for (const auto& [key, value] : j.items()) {
    if (key == "c0") {
      s.c0 = value.get<double>();
    } else if (key == "terms") {
      for (const auto& term : value) {
        s.terms.push_back({term.at("k").get<int>(), term.at("coef").get<double>(),
                           term.value("sine", false)});
      }
    } else {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
  return s;
}

ordered_json series_to_json(const TrigSeries& s) {
  ordered_json j;
  j["c0"] = s.c0;
  j["terms"] = ordered_json::array();
  for (const auto& term : s.terms) {
    j["terms"].push_back({{"k", term.k}, {"coef", term.coef}, {"sine", term.sine}});
  }
  return j;
}

void write_echo(const RunConfig& cfg) {
  write_file(std::filesystem::path(cfg.out_dir) / "config_echo.json", cfg.echo_json());
}

std::map<int, std::vector<double>> compute_level_nodes(const PotentialPair& pp,
                                                       const std::set<int>& levels,
                                                       const SolverOptions& opt) {
  std::map<int, std::vector<double>> out;
  for (int m : levels) {
    const SpectrumRecord rec = locate_eigenvalues(pp, m, m, opt);
    out[m] = compute_nodes(pp, m, rec.at(m).lambda, opt);
  }
  return out;
}

double true_mean_q(const PotentialPair& pp) {
  const double a = pp.alpha().value;
  return a / std::pow(kPi, a) *
         simpson([&](double t) { return pp.q_t(t); }, 0.0, pp.T(), 8192);
}

double relative_to(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-12);
  return std::abs(got - want) / scale;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "schema_version") {
        if (value.get<int>() != kSchemaVersion) {
          throw ConfigError(source + ": unsupported schema_version");
        }
      } else if (key == "alpha") {
        cfg.alpha = value.get<double>();
      } else if (key == "preset") {
        cfg.preset = value.get<std::string>();
      } else if (key == "potential") {
        cfg.custom_potential = true;
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "p") {
            cfg.p_series = series_from_json(pv, "potential.p");
          } else if (pk == "q") {
            cfg.q_series = series_from_json(pv, "potential.q");
          } else if (pk == "allow_zero_p") {
            cfg.allow_zero_p = pv.get<bool>();
          } else {
            throw ConfigError(source + ": unknown key 'potential." + pk + "'");
          }
        }
      } else if (key == "grid_points") {
        cfg.grid_points = value.get<std::size_t>();
      } else if (key == "n_min") {
        cfg.n_min = value.get<int>();
      } else if (key == "n_max") {
        cfg.n_max = value.get<int>();
      } else if (key == "n_use") {
        cfg.n_use = value.get<int>();
      } else if (key == "n_use2") {
        cfg.n_use2 = value.get<int>();
      } else if (key == "richardson") {
        cfg.richardson = value.get<bool>();
      } else if (key == "refine") {
        cfg.refine = value.get<bool>();
      } else if (key == "cross_check") {
        cfg.cross_check = value.get<bool>();
      } else if (key == "emit_shots") {
        cfg.emit_shots = value.get<bool>();
      } else if (key == "out_dir") {
        cfg.out_dir = value.get<std::string>();
      } else if (key == "sweep") {
        cfg.sweep = value.get<std::vector<int>>();
      } else if (key == "thresholds") {
        for (const auto& [tk, tv] : value.items()) {
          if (tk == "p_rel") {
            cfg.thresholds.p_rel = tv.get<double>();
          } else if (tk == "q_rel") {
            cfg.thresholds.q_rel = tv.get<double>();
          } else if (tk == "mean_rel") {
            cfg.thresholds.mean_rel = tv.get<double>();
          } else {
            throw ConfigError(source + ": unknown key 'thresholds." + tk + "'");
          }
        }
      } else if (key == "smoothing_window") {
        cfg.smoothing_window = value.get<int>();
      } else if (key == "refine_passes") {
        cfg.refine_passes = value.get<int>();
      } else {
        throw ConfigError(source + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
    throw ConfigError(source + ": alpha must lie in (0, 1]");
  }
  if (cfg.grid_points < 5) throw ConfigError(source + ": grid_points must be >= 5");
  if (cfg.n_use < 8) throw ConfigError(source + ": n_use must be >= 8");
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path);
}

void RunConfig::apply_env() {
  if (const char* env = std::getenv("CONFNODAL_GRID")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 5) {
      throw ConfigError("CONFNODAL_GRID must be an integer >= 5, got '" + std::string(env) + "'");
    }
    grid_points = static_cast<std::size_t>(v);
  }
}

std::string RunConfig::echo_json() const {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["alpha"] = alpha;
  j["preset"] = preset;
  if (custom_potential) {
    j["potential"] = {{"p", series_to_json(p_series)},
                      {"q", series_to_json(q_series)},
                      {"allow_zero_p", allow_zero_p}};
  }
  j["grid_points"] = grid_points;
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  j["n_use"] = n_use;
  j["n_use2"] = n_use2;
  j["richardson"] = richardson;
  j["refine"] = refine;
  j["cross_check"] = cross_check;
  j["emit_shots"] = emit_shots;
  j["out_dir"] = out_dir;
  j["sweep"] = sweep;
  j["thresholds"] = {{"p_rel", thresholds.p_rel},
                     {"q_rel", thresholds.q_rel},
                     {"mean_rel", thresholds.mean_rel}};
  j["smoothing_window"] = smoothing_window;
  j["refine_passes"] = refine_passes;
  return j.dump(2) + "\n";
}

PotentialPair RunConfig::potential() const {
  const AlphaOrder a(alpha);
  if (custom_potential) {
    return make_potential(a, Profile::trig(p_series), Profile::trig(q_series), allow_zero_p);
  }
  return preset_potential(preset, a);
}

std::size_t RunConfig::effective_grid() const {
  return refine ? 2 * (grid_points - 1) + 1 : grid_points;
}

SolverOptions RunConfig::solver_options() const {
  SolverOptions opt;
  opt.grid_points = effective_grid();
  return opt;
}

InverseOptions RunConfig::inverse_options() const {
  InverseOptions opt;
  opt.grid_points = effective_grid();
  opt.smoothing_window = smoothing_window;
  opt.refine_passes = refine_passes;
  return opt;
}

std::string nodes_to_json(const NodalSet& set) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["alpha"] = set.alpha.value;
  j["provenance"] = set.provenance == NodeProvenance::kNumeric ? "numeric" : "asymptotic";
  j["max_union_gap"] = set.max_union_gap;
  j["entries"] = ordered_json::array();
  for (const auto& [n, nodes] : set.entries) {
    j["entries"].push_back({{"n", n}, {"nodes", nodes}});
  }
  return j.dump(2) + "\n";
}

NodalSet nodes_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("nodes file: ") + e.what());
  }
  try {
    if (j.value("schema_version", 0) != kSchemaVersion) {
      throw ConstraintError("nodes file: missing or unsupported schema_version");
    }
    NodalSet set{AlphaOrder(j.at("alpha").get<double>()), {}, NodeProvenance::kNumeric, 0.0};
    if (j.value("provenance", "numeric") == "asymptotic") {
      set.provenance = NodeProvenance::kAsymptotic;
    }
    set.max_union_gap = j.value("max_union_gap", 0.0);
    for (const auto& entry : j.at("entries")) {
      set.entries[entry.at("n").get<int>()] = entry.at("nodes").get<std::vector<double>>();
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw ConstraintError(std::string("nodes file: ") + e.what());
  }
}

std::string spectrum_to_csv(const SpectrumRecord& record) {
  std::string out = "n,lambda_n,guess,residual\n";
  for (const auto& e : record.entries) {
    out += std::to_string(e.n) + "," + fmt(e.lambda) + "," + fmt(e.guess) + "," +
           fmt(e.residual) + "\n";
  }
  return out;
}

std::string shots_to_csv(const std::vector<ShotSolution>& shots) {
  std::string out = "lambda,x,y,dy\n";
  for (const auto& s : shots) {
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      out += fmt(s.lambda) + "," + fmt(s.y.x(i)) + "," + fmt(s.y[i]) + "," + fmt(s.dy[i]) + "\n";
    }
  }
  return out;
}

std::string reconstruction_to_csv(const ReconstructionResult& res) {
  std::string out = "x,Q,p,f,r,q\n";
  for (std::size_t i = 0; i < res.Q.size(); ++i) {
    out += fmt(res.Q.x(i)) + "," + fmt(res.Q[i]) + "," + fmt(res.p[i]) + "," + fmt(res.f[i]) +
           "," + fmt(res.r[i]) + "," + fmt(res.q[i]) + "\n";
  }
  return out;
}

std::string diagnostics_to_json(const RunConfig& cfg, const ReconstructionResult& res) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["alpha"] = cfg.alpha;
  j["n_use"] = cfg.n_use;
  j["n_use2"] = cfg.n_use2 > 0 ? cfg.n_use2 : 2 * cfg.n_use;
  j["richardson"] = cfg.richardson;
  j["mean_q"] = res.mean_q;
  j["step4"] = {{"median", res.step4.median},
                {"iqr", res.step4.iqr},
                {"points", res.step4.points},
                {"degenerate", res.step4.degenerate}};
  j["r_mean_residual"] = res.r_mean_residual;
  j["Q_end_residual"] = res.Q_end_residual;
  j["passes_run"] = res.passes_run;
  j["mean_change_last_pass"] = res.mean_change_last_pass;
  j["smoothing_window"] = cfg.smoothing_window;
  j["notes"] = res.notes;
  return j.dump(2) + "\n";
}

namespace {

void forward_outputs(const RunConfig& cfg, bool want_spectrum, bool want_nodes) {
  const PotentialPair pp = cfg.potential();
  const SolverOptions opt = cfg.solver_options();
  const SpectrumRecord spectrum = locate_eigenvalues(pp, cfg.n_min, cfg.n_max, opt);
  if (cfg.cross_check) {
    for (const auto& e : spectrum.entries) {
      (void)characteristic(pp, e.lambda, opt, /*cross_check=*/true);
    }
  }
  const std::filesystem::path dir(cfg.out_dir);
  write_echo(cfg);
  if (want_spectrum) write_file(dir / "spectrum.csv", spectrum_to_csv(spectrum));
  if (want_nodes) {
    write_file(dir / "nodes.json", nodes_to_json(nodal_dataset(pp, spectrum, opt)));
  }
  if (cfg.emit_shots) {
    std::vector<ShotSolution> shots;
    shots.reserve(spectrum.entries.size());
    for (const auto& e : spectrum.entries) shots.push_back(eigenfunction(pp, e, opt));
    write_file(dir / "shots.csv", shots_to_csv(shots));
  }
}

ReconstructionResult invert_outputs(const RunConfig& cfg, const NodalSet& set,
                                    std::string* report_json) {
  if (std::abs(set.alpha.value - cfg.alpha) > 1e-9) {
    throw ConstraintError("alpha mismatch: config has " + std::to_string(cfg.alpha) +
                          ", nodes file has " + std::to_string(set.alpha.value));
  }
  NodalInput input{set.alpha, set.entries, cfg.n_use, cfg.n_use2, cfg.richardson};
  const ReconstructionResult res = reconstruct(input, cfg.inverse_options());
  const std::filesystem::path dir(cfg.out_dir);
  write_echo(cfg);
  write_file(dir / "reconstruction.csv", reconstruction_to_csv(res));
  const std::string diag = diagnostics_to_json(cfg, res);
  write_file(dir / "diagnostics.json", diag);
  if (report_json) *report_json = diag;
  if (res.step4.degenerate) {
    throw ConstraintError(
        "Step 4 denominator degenerate (p effectively constant); the mean of q is not "
        "recoverable — see diagnostics.json");
  }
  return res;
}

void roundtrip_outputs(const RunConfig& cfg, std::string* report_json) {
  const PotentialPair pp = cfg.potential();
  const SolverOptions sopt = cfg.solver_options();
  if (cfg.sweep.empty()) throw ConfigError("roundtrip sweep must not be empty");

  std::set<int> levels;
  for (int nu : cfg.sweep) {
    if (nu < 8) throw ConfigError("sweep entries must be >= 8");
    NodalInput probe{pp.alpha(), {}, nu, 0, cfg.richardson};
    for (int m : probe.levels()) levels.insert(m);
  }
  const auto node_map = compute_level_nodes(pp, levels, sopt);

  const InverseOptions iopt = cfg.inverse_options();
  const double mean_true = true_mean_q(pp);
  GridFunction p_true(pp.alpha(), iopt.grid_points), q_true(pp.alpha(), iopt.grid_points);
  for (std::size_t i = 0; i < iopt.grid_points; ++i) {
    p_true[i] = pp.p_t(p_true.t(i));
    q_true[i] = pp.q_t(q_true.t(i));
  }

  ordered_json entries = ordered_json::array();
  std::vector<double> p_errs, q_errs;
  bool degenerate = false;
  double mean_rel_last = 0.0;
  for (int nu : cfg.sweep) {
    NodalInput input{pp.alpha(), {}, nu, 0, cfg.richardson};
    for (int m : input.levels()) input.nodes[m] = node_map.at(m);
    const ReconstructionResult res = reconstruct(input, iopt);
    degenerate = degenerate || res.step4.degenerate;
    const double pe = interior_rel_error(res.p, p_true);
    const double qe = interior_rel_error(res.q, q_true);
    const double me = relative_to(res.mean_q, mean_true);
    p_errs.push_back(pe);
    q_errs.push_back(qe);
    mean_rel_last = me;
    entries.push_back({{"n_use", nu},
                       {"p_rel_err", pe},
                       {"q_rel_err", qe},
                       {"mean_q", res.mean_q},
                       {"mean_rel_err", me},
                       {"degenerate", res.step4.degenerate}});
  }

  bool monotone = true;
  for (std::size_t i = 1; i < p_errs.size(); ++i) {
    monotone = monotone && p_errs[i] <= p_errs[i - 1] + 1e-12 &&
               q_errs[i] <= q_errs[i - 1] + 1e-12;
  }
  const bool pass = !degenerate && p_errs.back() <= cfg.thresholds.p_rel &&
                    q_errs.back() <= cfg.thresholds.q_rel &&
                    mean_rel_last <= cfg.thresholds.mean_rel;

  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["alpha"] = cfg.alpha;
  j["preset"] = cfg.preset;
  j["richardson"] = cfg.richardson;
  j["mean_q_true"] = mean_true;
  j["thresholds"] = {{"p_rel", cfg.thresholds.p_rel},
                     {"q_rel", cfg.thresholds.q_rel},
                     {"mean_rel", cfg.thresholds.mean_rel}};
  j["entries"] = entries;
  j["monotone_nonincreasing"] = monotone;
  j["pass"] = pass;
  const std::string text = j.dump(2) + "\n";

  write_echo(cfg);
  write_file(std::filesystem::path(cfg.out_dir) / "roundtrip_report.json", text);
  if (report_json) *report_json = text;
  if (degenerate) {
    throw ConstraintError(
        "Step 4 denominator degenerate (p effectively constant); round trip cannot recover the "
        "mean of q");
  }
  if (!pass) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "round trip thresholds not met: p_rel=%.3e (<=%.3e), q_rel=%.3e (<=%.3e), "
                  "mean_rel=%.3e (<=%.3e)",
                  p_errs.back(), cfg.thresholds.p_rel, q_errs.back(), cfg.thresholds.q_rel,
                  mean_rel_last, cfg.thresholds.mean_rel);
    throw AcceptanceError(msg);
  }
}

void selftest_outputs(const RunConfig& cfg, std::string* report_json) {
  ordered_json rows = ordered_json::array();
  double worst = 0.0;
  for (double av : {0.25, 0.5, 0.75, 1.0}) {
    const AlphaOrder a(av);
    const double w = a.beta();
    const std::vector<std::pair<std::string, RealFn>> probes{
        {"sin(x)", [](double x) { return std::sin(x); }},
        {"x^2+1", [](double x) { return x * x + 1.0; }},
        {"cos(w x^alpha)", [av, w](double x) { return std::cos(w * std::pow(x, av)); }}};
    for (const auto& [name, fn] : probes) {
      const IdentityReport rep = check_calculus_identities(fn, a, cfg.grid_points);
      worst = std::max({worst, rep.lemma3, rep.lemma4, rep.by_parts});
      rows.push_back({{"alpha", av},
                      {"probe", name},
                      {"inverse_identity", rep.lemma3},
                      {"antiderivative_identity", rep.lemma4},
                      {"by_parts", rep.by_parts}});
    }
  }
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["grid_points"] = cfg.grid_points;
  j["rows"] = rows;
  j["max_residual"] = worst;
  j["pass"] = worst < 1e-7;
  const std::string text = j.dump(2) + "\n";
  write_echo(cfg);
  write_file(std::filesystem::path(cfg.out_dir) / "selftest.json", text);
  if (report_json) *report_json = text;
  if (worst >= 1e-7) {
    throw AcceptanceError("calculus identity residual too large: " + fmt(worst));
  }
}

}  // namespace

void cmd_forward(const RunConfig& cfg) { forward_outputs(cfg, true, true); }
void cmd_spectrum(const RunConfig& cfg) { forward_outputs(cfg, true, false); }
void cmd_nodes(const RunConfig& cfg) { forward_outputs(cfg, false, true); }

void cmd_invert(const RunConfig& cfg, const std::string& nodes_path) {
  std::ifstream in(nodes_path, std::ios::binary);
  if (!in) throw ConfigError("cannot read nodes file: " + nodes_path);
  std::stringstream buf;
  buf << in.rdbuf();
  (void)invert_outputs(cfg, nodes_from_json_text(buf.str()), nullptr);
}

void cmd_roundtrip(const RunConfig& cfg) { roundtrip_outputs(cfg, nullptr); }
void cmd_selftest(const RunConfig& cfg) { selftest_outputs(cfg, nullptr); }

int run_command(const RunConfig& cfg_in, const std::string& command,
                const std::string& nodes_path, std::string* error_message,
                std::string* report_json) {
  try {
    RunConfig cfg = cfg_in;
    cfg.apply_env();
    std::filesystem::create_directories(cfg.out_dir);
    if (command == "forward") {
      cmd_forward(cfg);
    } else if (command == "spectrum") {
      cmd_spectrum(cfg);
    } else if (command == "nodes") {
      cmd_nodes(cfg);
    } else if (command == "invert") {
      if (nodes_path.empty()) throw ConfigError("invert requires a nodes file path");
      std::ifstream in(nodes_path, std::ios::binary);
      if (!in) throw ConfigError("cannot read nodes file: " + nodes_path);
      std::stringstream buf;
      buf << in.rdbuf();
      (void)invert_outputs(cfg, nodes_from_json_text(buf.str()), report_json);
    } else if (command == "roundtrip") {
      roundtrip_outputs(cfg, report_json);
    } else if (command == "selftest") {
      selftest_outputs(cfg, report_json);
    } else {
      throw ConfigError("unknown command: " + command);
    }
    return 0;
  } catch (const ConfigError& e) {
    if (error_message) *error_message = e.what();
    return 1;
  } catch (const ConstraintError& e) {
    if (error_message) *error_message = e.what();
    return 2;
  } catch (const NumericError& e) {
    if (error_message) *error_message = e.what();
    return 3;
  } catch (const AcceptanceError& e) {
    if (error_message) *error_message = e.what();
    return 4;
  } catch (const std::exception& e) {
    if (error_message) *error_message = e.what();
    return 3;
  }
}

}  // namespace confnodal
