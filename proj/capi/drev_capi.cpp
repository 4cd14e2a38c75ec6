#include "drev.h"

#include <string>

#include "drev/eigens.hpp"
#include "drev/runner.hpp"

struct drev_run {
  int exit_code = 0;
  std::string report;
};

namespace {
thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg ? msg : ""; }
}  // namespace

extern "C" {

const char* drev_version(void) { return drev::kVersion; }

const char* drev_last_error(void) { return g_last_error.c_str(); }

drev_status drev_run_config(const char* config_text, drev_run** out) {
  if (!config_text || !out) {
    set_error("null argument");
    return DREV_ERR_NULL;
  }
  *out = nullptr;
  drev::RunConfig cfg;
  try {
    cfg = drev::RunConfig::parse(config_text);
  } catch (const std::exception& e) {
    set_error(e.what());
    return DREV_ERR_CONFIG;
  }
  try {
    auto outcome = drev::run_config(cfg);
    auto* run = new drev_run;
    run->exit_code = outcome.exit_code;
    run->report = outcome.report.dump(2);
    run->report += '\n';
    *out = run;
    set_error("");
    return DREV_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DREV_ERR_NUMERIC;
  }
}

int drev_run_exit_code(const drev_run* run) {
  return run ? run->exit_code : 1;
}

const char* drev_run_report(const drev_run* run) {
  return run ? run->report.c_str() : "";
}

void drev_run_free(drev_run* run) { delete run; }

drev_status drev_angular_mu1(int m, int n, int n_theta, double* mu1) {
  if (!mu1) {
    set_error("null argument");
    return DREV_ERR_NULL;
  }
  try {
    *mu1 = drev::angular_eigenpair(drev::Decomposition(m, n), n_theta).mu1;
    set_error("");
    return DREV_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DREV_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DREV_ERR_NUMERIC;
  }
}

drev_status drev_hardy_lambda1(int N, double R1, double R2, int n_r,
                               double* lambda1) {
  if (!lambda1) {
    set_error("null argument");
    return DREV_ERR_NULL;
  }
  try {
    *lambda1 = drev::hardy_smallest(N, R1, R2, n_r).lambda1;
    set_error("");
    return DREV_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DREV_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DREV_ERR_NUMERIC;
  }
}

}  // extern "C"
