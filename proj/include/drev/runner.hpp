#ifndef DREV_RUNNER_HPP
#define DREV_RUNNER_HPP

#include <json.hpp>

#include "drev/config.hpp"

namespace drev {

inline constexpr const char* kVersion = "0.4.0";

struct RunOutcome {
  // 0 success/converged, 1 configuration error, 2 numeric failure or
  // non-convergence.
  int exit_code = 0;
  nlohmann::ordered_json report;
};

// Dispatches on cfg key "command": solve, angular, hardy, thin-annulus,
// multiplicity, certify. Never throws; errors land in the report and the
// exit code.
RunOutcome run_config(const RunConfig& cfg);

}  // namespace drev

#endif
