#ifndef DREV_CAPI_H
#define DREV_CAPI_H

/* C interface to the double-revolution elliptic solver. All state lives in
 * opaque handles; functions return status codes and never throw across the
 * boundary. Strings returned by accessors are owned by their handle. */

#if defined(_WIN32)
#  if defined(DREV_BUILD_SHARED)
#    define DREV_API __declspec(dllexport)
#  else
#    define DREV_API __declspec(dllimport)
#  endif
#else
#  define DREV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drev_status {
  DREV_OK = 0,
  DREV_ERR_CONFIG = 1,
  DREV_ERR_NUMERIC = 2,
  DREV_ERR_NULL = 3
} drev_status;

typedef struct drev_run drev_run;

DREV_API const char* drev_version(void);

/* Message of the last failing call on this thread, empty string if none. */
DREV_API const char* drev_last_error(void);

/* Parses configuration text (key = value lines, [section] headers, #
 * comments) and executes its "command" (solve, angular, hardy, thin-annulus,
 * multiplicity, certify). A handle is produced whenever the text parses; a
 * run that fails numerically still yields a handle whose exit code and JSON
 * report describe the failure. */
DREV_API drev_status drev_run_config(const char* config_text, drev_run** out);

/* 0 success/converged, 1 configuration error, 2 numeric failure or
 * non-convergence. */
DREV_API int drev_run_exit_code(const drev_run* run);

/* JSON report text; valid until drev_run_free. */
DREV_API const char* drev_run_report(const drev_run* run);

DREV_API void drev_run_free(drev_run* run);

/* Convenience evaluators for the two eigenvalue quantities. */
DREV_API drev_status drev_angular_mu1(int m, int n, int n_theta, double* mu1);
DREV_API drev_status drev_hardy_lambda1(int N, double R1, double R2, int n_r,
                                        double* lambda1);

#ifdef __cplusplus
}
#endif

#endif
