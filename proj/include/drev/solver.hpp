#ifndef DREV_SOLVER_HPP
#define DREV_SOLVER_HPP

#include <functional>
#include <string>

#include "drev/cone.hpp"
#include "drev/geometry.hpp"
#include "drev/operator.hpp"

namespace drev {

// Continuous problem data for  -Lap u = a(x) u^{p-1}, u > 0, zero boundary
// values, posed on a domain of double revolution and reduced to its section.
struct ProblemSpec {
  Decomposition decomp;
  DomainProfile profile;
  Coefficient coeff;
  double p = 4.0;
  CoefficientCheck coeff_check;
  bool profile_monotone = false;
  // The variational existence window for the monotone-cone method is
  // p < 2(n+1)/(n-1) for n >= 2 (any p > 2 when n = 1); outside it the solver
  // still runs but flags the run.
  bool outside_proven_range = false;
};

// Validates p > 2, a >= 0 and the monotonicity condition s a_t - t a_s <= 0
// (numerically, unless known analytically); throws std::invalid_argument on
// violation.
ProblemSpec make_problem(Decomposition decomp, DomainProfile profile,
                         Coefficient coeff, double p);

struct Energy {
  double dirichlet = 0.0;  // integral(|grad u|^2 dmu)
  double nonlinear = 0.0;  // integral(a u_+^p dmu)
  double total = 0.0;      // dirichlet/2 - nonlinear/p
};

struct SolveOptions {
  int max_iter = 5000;
  double tol = 1e-8;        // relative strong-form residual
  double tau0 = 1.0;        // initial step (1 = pure rescaled invariance map)
  double min_tau = 1e-9;
  std::function<void(int iter, double residual, double energy)> monitor;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double el_residual = 0.0;     // |L u - a u^{p-1}|_mu / |a u^{p-1}|_mu
  double invariance_gap = 0.0;  // |u - v|_mu / |u|_mu, v the mapped iterate
  double nehari_alpha = 1.0;    // last rescaling factor
  double tau = 1.0;             // last accepted step
  // True when the cone projection pinned the iterate away from an equation
  // solution and was switched off for the remaining iterations. A guard for
  // geometries where the discrete resolvent preserves the cone only
  // approximately; the built-in profiles do not trigger it.
  bool projection_released = false;
  Energy energy;
  ConeDiagnostics cone;
  std::string message;
  Field u;
};

struct InvarianceCertificate {
  ConeDiagnostics cone_of_image;  // cone check of v = solve(a u_+^{p-1})
  double gap = 0.0;               // |u - v|_mu / |u|_mu
  LinearSolveInfo linear;
  Field v;
};

// A problem bound to a grid: operator, nodal coefficient, energies and the
// constrained solver.
class DiscreteProblem {
 public:
  DiscreteProblem(ProblemSpec spec, int n_theta, int n_rho);

  const ProblemSpec& spec() const { return spec_; }
  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  const WeightedOperator& op() const { return *op_; }
  const std::vector<double>& coefficient_nodes() const { return a_; }

  Energy energy(const Field& u) const;

  // a u_+^{p-1} at the nodes.
  Field nonlinear_rhs(const Field& u) const;

  // v = L^{-1}(a u_+^{p-1}); under the monotonicity condition this map sends
  // the cone into itself, which is what certify_invariance measures.
  Field invariance_map(const Field& u, LinearSolveInfo* info = nullptr) const;

  // alpha > 0 with d/dt E(t u) = 0 at t = alpha; throws when u has no
  // positive part or vanishing energy.
  double nehari_scale(const Field& u) const;

  // Projected, Nehari-rescaled descent for the constrained ground state:
  //   u <- cone_project( u - tau (u - v) ), rescaled onto the Nehari set,
  // with backtracking on the energy. Non-convergence is reported, not thrown.
  SolveReport solve_ground_state(const Field& init,
                                 const SolveOptions& opts = {}) const;

  InvarianceCertificate certify_invariance(const Field& u) const;

 private:
  ProblemSpec spec_;
  std::shared_ptr<const Grid> grid_;
  std::shared_ptr<const WeightedOperator> op_;
  std::vector<double> a_;
};

}  // namespace drev

#endif
