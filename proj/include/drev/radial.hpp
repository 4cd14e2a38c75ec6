#ifndef DREV_RADIAL_HPP
#define DREV_RADIAL_HPP

#include <functional>
#include <vector>

namespace drev {

// Positive radial solution of
//   u'' + (N-1) u'/r + a(r) u^{p-1} = 0,  u(R1) = u(R2) = 0,
// computed by shooting on the initial slope: larger slopes drive an earlier
// zero crossing, so the crossing predicate is monotone and the slope is
// bisected. Classical RK4 with a fixed step on the stated grid; the final
// slope is taken from the non-crossing side so the profile stays nonnegative,
// and the leftover boundary value is reported as bc_defect.
struct RadialSolution {
  int N = 0;
  double p = 0.0;
  double R1 = 0.0, R2 = 0.0;
  double sigma = 0.0;      // u'(R1)
  double bc_defect = 0.0;  // |u(R2)| after bisection
  std::vector<double> r, u, du;

  double max_value() const;
  // C^1 cubic Hermite interpolation through the stored nodes (u and u' are
  // both integrated, so the interpolant is 4th-order accurate).
  double value(double radius) const;
  double deriv(double radius) const;
};

struct ShootOptions {
  int n_steps = 16384;        // RK4 steps across (R1, R2)
  double slope_rtol = 1e-13;  // relative bisection width on sigma
  int max_bracket = 200;      // doubling/halving steps to bracket
  double sigma0 = 1.0;        // starting slope guess
};

RadialSolution shoot_radial(int N, double R1, double R2, double p,
                            const std::function<double(double)>& a_of_r,
                            const ShootOptions& opts = {});

// Simpson quadrature of f over the solution's grid (n_steps must be even).
double radial_integral(const RadialSolution& sol,
                       const std::function<double(double, double, double)>&
                           f_r_u_du);

}  // namespace drev

#endif
