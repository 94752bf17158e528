#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "confnodal.h"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("confnodal_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Session {
  cf_session* s;
  explicit Session(const std::string& json) : s(cf_session_create(json.c_str())) {}
  ~Session() { cf_session_destroy(s); }
  cf_status run(const char* cmd, const char* nodes = nullptr) { return cf_run(s, cmd, nodes); }
};

}  // namespace

TEST_CASE("version and echo are available") {
  CHECK(std::string(cf_version()).find("confnodal") != std::string::npos);
  Session s("{}");
  const auto echo = nlohmann::json::parse(cf_config_echo(s.s));
  CHECK(echo.at("schema_version") == 1);
  CHECK(echo.at("alpha") == 1.0);
  CHECK(echo.at("grid_points") == 4001);
}

TEST_CASE("malformed config json reports a config error") {
  Session s("{\"alpha\": 0.5,,}");
  CHECK(s.run("selftest") == CF_ERR_CONFIG);
  CHECK(std::string(cf_last_error(s.s)).find("parse") != std::string::npos);
}

TEST_CASE("unknown config key is named") {
  Session s("{\"alhpa\": 0.5}");
  CHECK(s.run("selftest") == CF_ERR_CONFIG);
  CHECK(std::string(cf_last_error(s.s)).find("alhpa") != std::string::npos);
}

TEST_CASE("constant p violates the constraint with exit 2 semantics") {
  const fs::path dir = fresh_dir("constp");
  Session s("{\"alpha\": 1.0, \"n_max\": 3, \"out_dir\": \"" + dir.string() +
            "\", \"potential\": {\"p\": {\"c0\": 0.4}, \"q\": {\"c0\": 0.0}}}");
  CHECK(s.run("forward") == CF_ERR_CONSTRAINT);
  const std::string msg = cf_last_error(s.s);
  CHECK(msg.find("mean") != std::string::npos);
}

TEST_CASE("forward on the zero preset writes the exact spectrum") {
  const fs::path dir = fresh_dir("fwd_zero");
  Session s("{\"alpha\": 1.0, \"preset\": \"zero\", \"n_max\": 10, \"out_dir\": \"" +
            dir.string() + "\"}");
  REQUIRE(s.run("forward") == CF_OK);

  std::ifstream csv(dir / "spectrum.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,lambda_n,guess,residual");
  int n = 0;
  while (std::getline(csv, line)) {
    ++n;
    std::stringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(std::stoi(cell) == n);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(static_cast<double>(n)).epsilon(1e-10));
  }
  CHECK(n == 10);

  // nodes interchange schema pin
  const auto nodes = nlohmann::json::parse(slurp(dir / "nodes.json"));
  CHECK(nodes.at("schema_version") == 1);
  CHECK(nodes.at("alpha") == 1.0);
  CHECK(nodes.at("provenance") == "numeric");
  REQUIRE(nodes.at("entries").size() == 10);
  CHECK(nodes["entries"][0].at("n") == 1);
  CHECK(nodes["entries"][0].at("nodes").empty());
  CHECK(nodes["entries"][1]["nodes"][0].get<double>() ==
        doctest::Approx(1.5707963267948966).epsilon(1e-9));
  CHECK(fs::exists(dir / "config_echo.json"));
}

TEST_CASE("forward respects the CONFNODAL_GRID override") {
  const fs::path dir = fresh_dir("envgrid");
  setenv("CONFNODAL_GRID", "101", 1);
  Session s("{\"alpha\": 1.0, \"preset\": \"zero\", \"n_max\": 2, \"out_dir\": \"" +
            dir.string() + "\"}");
  REQUIRE(s.run("spectrum") == CF_OK);
  unsetenv("CONFNODAL_GRID");
  const auto echo = nlohmann::json::parse(slurp(dir / "config_echo.json"));
  CHECK(echo.at("grid_points") == 101);
}

TEST_CASE("invert pipeline: success, alpha mismatch and truncated files") {
  const fs::path dir = fresh_dir("invert");
  const std::string base = "\"preset\": \"bench-a\", \"n_max\": 20, \"n_use\": 10, "
                           "\"out_dir\": \"" +
                           dir.string() + "\"";
  {
    Session fwd("{\"alpha\": 1.0, " + base + "}");
    REQUIRE(fwd.run("forward") == CF_OK);
  }
  const fs::path nodes = dir / "nodes.json";
  {
    Session inv("{\"alpha\": 1.0, " + base + "}");
    REQUIRE(inv.run("invert", nodes.string().c_str()) == CF_OK);
    const auto diag = nlohmann::json::parse(cf_last_report_json(inv.s));
    CHECK(diag.at("schema_version") == 1);
    CHECK(diag.at("mean_q").get<double>() == doctest::Approx(0.1).epsilon(0.25));
    CHECK_FALSE(diag.at("step4").at("degenerate").get<bool>());
    std::ifstream rec(dir / "reconstruction.csv");
    std::string header;
    std::getline(rec, header);
    CHECK(header == "x,Q,p,f,r,q");
  }
  {
    Session inv("{\"alpha\": 0.5, " + base + "}");
    CHECK(inv.run("invert", nodes.string().c_str()) == CF_ERR_CONSTRAINT);
    CHECK(std::string(cf_last_error(inv.s)).find("alpha mismatch") != std::string::npos);
  }
  {
    auto j = nlohmann::json::parse(slurp(nodes));
    auto& entries = j["entries"];
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      if ((*it)["n"] == 15) {
        entries.erase(it);
        break;
      }
    }
    const fs::path truncated = dir / "nodes_truncated.json";
    std::ofstream(truncated) << j.dump(2);
    Session inv("{\"alpha\": 1.0, " + base + "}");
    CHECK(inv.run("invert", truncated.string().c_str()) == CF_ERR_CONSTRAINT);
    CHECK(std::string(cf_last_error(inv.s)).find("15") != std::string::npos);
  }
}

TEST_CASE("roundtrip runs are deterministic byte for byte") {
  const fs::path dir = fresh_dir("det");
  const std::string cfg = "{\"alpha\": 0.5, \"preset\": \"bench-a\", \"sweep\": [10, 20], "
                          "\"thresholds\": {\"p_rel\": 1.0, \"q_rel\": 1.0, \"mean_rel\": 1.0}, "
                          "\"out_dir\": \"" +
                          dir.string() + "\"}";
  Session s1(cfg);
  REQUIRE(s1.run("roundtrip") == CF_OK);
  const std::string report1 = slurp(dir / "roundtrip_report.json");
  const std::string echo1 = slurp(dir / "config_echo.json");
  Session s2(cfg);
  REQUIRE(s2.run("roundtrip") == CF_OK);
  CHECK(slurp(dir / "roundtrip_report.json") == report1);
  CHECK(slurp(dir / "config_echo.json") == echo1);
  const auto report = nlohmann::json::parse(report1);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("entries").size() == 2);
}

TEST_CASE("selftest passes and reports the residual table") {
  const fs::path dir = fresh_dir("selftest");
  Session s("{\"out_dir\": \"" + dir.string() + "\"}");
  REQUIRE(s.run("selftest") == CF_OK);
  const auto rep = nlohmann::json::parse(cf_last_report_json(s.s));
  CHECK(rep.at("pass").get<bool>());
  CHECK(rep.at("rows").size() == 12);  // 4 alphas x 3 probes
  CHECK(rep.at("max_residual").get<double>() < 1e-7);
}

TEST_CASE("unknown command is a config error") {
  Session s("{}");
  CHECK(s.run("frobnicate") == CF_ERR_CONFIG);
}
