#include "confnodal.h"

#include <new>
#include <string>

#include "confnodal/io.hpp"

struct cf_session {
  confnodal::RunConfig cfg;
  bool config_ok = true;
  std::string error;
  std::string report;
  std::string echo;
};

extern "C" {

cf_session* cf_session_create(const char* config_json) {
  auto* s = new (std::nothrow) cf_session;
  if (s == nullptr) return nullptr;
  if (config_json != nullptr && *config_json != '\0') {
    try {
      s->cfg = confnodal::RunConfig::from_json_text(config_json, "<config>");
    } catch (const std::exception& e) {
      s->config_ok = false;
      s->error = e.what();
    }
  }
  return s;
}

void cf_session_destroy(cf_session* session) { delete session; }

cf_status cf_run(cf_session* session, const char* command, const char* nodes_path) {
  if (session == nullptr) return CF_ERR_CONFIG;
  if (!session->config_ok) return CF_ERR_CONFIG;
  session->report.clear();
  std::string error;
  const int rc = confnodal::run_command(session->cfg, command != nullptr ? command : "",
                                        nodes_path != nullptr ? nodes_path : "", &error,
                                        &session->report);
  session->error = rc == 0 ? "" : error;
  return static_cast<cf_status>(rc);
}

const char* cf_last_error(const cf_session* session) {
  return session != nullptr ? session->error.c_str() : "null session";
}

const char* cf_last_report_json(const cf_session* session) {
  return session != nullptr ? session->report.c_str() : "";
}

const char* cf_config_echo(cf_session* session) {
  if (session == nullptr) return "";
  try {
    session->echo = session->cfg.echo_json();
  } catch (const std::exception&) {
    session->echo = "";
  }
  return session->echo.c_str();
}

const char* cf_version(void) { return "confnodal 1.0.0"; }

}  // extern "C"
