/* C interface of the confnodal shared library.
 *
 * A session wraps one run configuration (JSON, same schema as the CLI config
 * file). Commands write their artifacts into the configured output directory
 * and report through the status code taxonomy below; the last error message
 * and the last JSON report stay readable on the session until the next run.
 *
 * All functions are thread-compatible: distinct sessions may be used from
 * distinct threads; a single session must not be shared concurrently.
 */
#ifndef CONFNODAL_H
#define CONFNODAL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERR_CONFIG = 1,     /* malformed or inconsistent configuration */
  CF_ERR_CONSTRAINT = 2, /* violated mathematical precondition / degenerate data */
  CF_ERR_NUMERIC = 3,    /* numerical failure (overflow, lost bracket, ...) */
  CF_ERR_ACCEPTANCE = 4  /* quality thresholds not met */
} cf_status;

typedef struct cf_session cf_session;

/* Create a session from a JSON configuration string; NULL or "" selects the
 * defaults. Returns NULL only on allocation failure. A malformed
 * configuration is reported by the first cf_run (CF_ERR_CONFIG) and through
 * cf_last_error. */
cf_session* cf_session_create(const char* config_json);

void cf_session_destroy(cf_session* session);

/* Execute one command: "forward", "spectrum", "nodes", "invert", "roundtrip"
 * or "selftest". nodes_path is required by "invert" and ignored otherwise
 * (may be NULL). */
cf_status cf_run(cf_session* session, const char* command, const char* nodes_path);

/* Message of the last failure; "" when the last run succeeded. The pointer
 * stays valid until the next cf_run or cf_session_destroy. */
const char* cf_last_error(const cf_session* session);

/* Primary JSON artifact of the last run ("" when the command has none). Same
 * lifetime as cf_last_error. */
const char* cf_last_report_json(const cf_session* session);

/* Fully resolved configuration echo as JSON. */
const char* cf_config_echo(cf_session* session);

const char* cf_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CONFNODAL_H */
