#ifndef DREV_CONE_HPP
#define DREV_CONE_HPP

#include "drev/grid.hpp"

namespace drev {

// The monotone cone: nodal fields that are nonnegative and nonincreasing in
// theta along every constant-rho line (the discrete form of u_theta <= 0,
// equivalently s u_t - t u_s <= 0 on the section).
struct ConeDiagnostics {
  bool member = false;
  double min_value = 0.0;      // most negative nodal value
  double max_increase = 0.0;   // largest positive forward difference in theta
  double max_theta_slope = 0.0;  // max_increase / dtheta
  double tol = 0.0;            // 1e-12 * max(1, |u|_inf) used for membership
};

ConeDiagnostics cone_check(const Field& u);

// Exact projection onto the cone in the lumped-measure inner product: each
// constant-rho line is a weighted antitone regression (pool adjacent
// violators), clamped at zero afterwards; the diagonal metric makes the
// per-line problems independent and the clamp exact.
Field cone_project(const Field& u);

// Random cone member with sup norm one: nonnegative reversed cumulative sums
// along theta, modulated by a positive radial bump. Deterministic per seed.
Field random_cone_field(std::shared_ptr<const Grid> grid, unsigned seed);

}  // namespace drev

#endif
