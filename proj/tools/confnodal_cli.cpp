// Command-line front end. All numerics are reached through the C API of the
// shared library (confnodal.h); this file only assembles the configuration
// JSON from the config file and the flag overrides, dispatches the
// subcommand, and maps the status onto the process exit code.
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "confnodal.h"
#include "json.hpp"

namespace {

struct Overrides {
  std::optional<double> alpha;
  std::optional<std::string> preset;
  std::optional<int> nmax;
  std::optional<int> n_use;
  std::optional<std::string> out_dir;
  bool refine = false;
  std::optional<bool> richardson;
  bool cross_check = false;
};

std::string assemble_config(const std::string& config_path, const Overrides& ov) {
  std::string text = "{}";
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "error: cannot read config file: %s\n", config_path.c_str());
      std::exit(1);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    // Hand the raw text to the library so its parser reports the precise
    // location of the syntax error.
    return text;
  }
  if (ov.alpha) j["alpha"] = *ov.alpha;
  if (ov.preset) j["preset"] = *ov.preset;
  if (ov.nmax) j["n_max"] = *ov.nmax;
  if (ov.n_use) j["n_use"] = *ov.n_use;
  if (ov.out_dir) j["out_dir"] = *ov.out_dir;
  if (ov.refine) j["refine"] = true;
  if (ov.richardson) j["richardson"] = *ov.richardson;
  if (ov.cross_check) j["cross_check"] = true;
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("conformable spectral/nodal forward and inverse solver (") +
               cf_version() + ")"};
  app.require_subcommand(1);

  std::string config_path;
  std::string nodes_path;
  Overrides ov;
  app.add_option("--config", config_path, "JSON run configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--alpha", ov.alpha, "fractional order in (0, 1]");
  app.add_option("--preset", ov.preset, "potential preset (zero, constq, bench-a, bench-b)");
  app.add_option("--nmax", ov.nmax, "largest eigenvalue index for forward commands");
  app.add_option("--n-use", ov.n_use, "index at which the inverse limits are approximated");
  app.add_option("--out", ov.out_dir, "output directory");
  app.add_flag("--refine", ov.refine, "double the computation grid");
  bool rich_on = false, rich_off = false;
  app.add_flag("--richardson", rich_on, "Richardson-accelerate the inverse limits (default on)");
  app.add_flag("--no-richardson", rich_off, "disable Richardson acceleration");
  app.add_flag("--cross-check", ov.cross_check,
               "verify the characteristic function against the backward shot");

  const char* subs[] = {"forward", "spectrum", "nodes", "invert", "roundtrip", "selftest"};
  const char* descs[] = {"eigenvalues, nodes and optional shots",
                         "eigenvalue table only",
                         "nodal dataset only",
                         "potential reconstruction from a nodes file",
                         "forward -> invert comparison sweep",
                         "calculus identity self-test"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(subs[i], descs[i]);
    sub->fallthrough();  // global flags may follow the subcommand
    if (std::string(subs[i]) == "invert") {
      sub->add_option("--nodes", nodes_path, "nodes interchange JSON file")
          ->required()
          ->check(CLI::ExistingFile);
    }
  }

  CLI11_PARSE(app, argc, argv);
  if (rich_off) {
    ov.richardson = false;
  } else if (rich_on) {
    ov.richardson = true;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  cf_session* session = cf_session_create(assemble_config(config_path, ov).c_str());
  if (session == nullptr) {
    std::fprintf(stderr, "error: out of memory\n");
    return 3;
  }
  const cf_status status = cf_run(session, command.c_str(), nodes_path.c_str());
  if (status != CF_OK) {
    std::fprintf(stderr, "error: %s\n", cf_last_error(session));
  }
  const char* report = cf_last_report_json(session);
  if (report != nullptr && report[0] != '\0') {
    std::fputs(report, stdout);
  }
  cf_session_destroy(session);
  return static_cast<int>(status);
}
