#include "drev/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drev {

namespace {

Field lincomb(double a, const Field& u, double b, const Field& v) {
  Field out(u.grid_ptr());
  const int n = u.size();
  for (int k = 0; k < n; ++k) out.data()[k] = a * u.data()[k] + b * v.data()[k];
  return out;
}

void scale_inplace(Field& u, double a) {
  for (double& v : u.values()) v *= a;
}

}  // namespace

ProblemSpec make_problem(Decomposition decomp, DomainProfile profile,
                         Coefficient coeff, double p) {
  if (!(p > 2.0))
    throw std::invalid_argument("exponent must satisfy p > 2");
  ProblemSpec spec{decomp, std::move(profile), std::move(coeff), p};
  spec.coeff_check = check_coefficient(spec.coeff, spec.profile);
  if (!spec.coeff_check.nonnegative)
    throw std::invalid_argument("coefficient must be nonnegative");
  if (!spec.coeff_check.monotone)
    throw std::invalid_argument(
        "coefficient violates the monotonicity condition s a_t - t a_s <= 0");
  spec.profile_monotone = spec.profile.monotone();
  int n = decomp.n;
  spec.outside_proven_range =
      (n >= 2) && !(p < 2.0 * (n + 1) / (n - 1));
  return spec;
}

DiscreteProblem::DiscreteProblem(ProblemSpec spec, int n_theta, int n_rho)
    : spec_(std::move(spec)) {
  grid_ = make_grid(spec_.decomp, spec_.profile, n_theta, n_rho);
  op_ = make_operator(grid_);
  const Grid& g = *grid_;
  a_.resize(g.interior_count());
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j < g.n_theta(); ++j) {
      double v = spec_.coeff(g.s(i, j), g.t(i, j));
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::runtime_error("coefficient not finite/nonnegative at node");
      a_[g.index(i, j)] = v;
    }
}

Energy DiscreteProblem::energy(const Field& u) const {
  Energy e;
  e.dirichlet = op_->dirichlet_form(u, u);
  const auto& M = op_->mass();
  double phi = 0.0;
  for (int k = 0; k < u.size(); ++k) {
    double up = std::max(u.data()[k], 0.0);
    phi += M[k] * a_[k] * std::pow(up, spec_.p);
  }
  e.nonlinear = phi;
  e.total = 0.5 * e.dirichlet - phi / spec_.p;
  return e;
}

Field DiscreteProblem::nonlinear_rhs(const Field& u) const {
  Field f(grid_);
  for (int k = 0; k < u.size(); ++k) {
    double up = std::max(u.data()[k], 0.0);
    f.data()[k] = a_[k] * std::pow(up, spec_.p - 1.0);
  }
  return f;
}

Field DiscreteProblem::invariance_map(const Field& u,
                                      LinearSolveInfo* info) const {
  return op_->solve(nonlinear_rhs(u), info);
}

double DiscreteProblem::nehari_scale(const Field& u) const {
  double D = op_->dirichlet_form(u, u);
  Energy e = energy(u);
  if (!(e.nonlinear > 0.0) || !(D > 0.0))
    throw std::runtime_error("Nehari rescaling undefined for this iterate");
  return std::pow(D / e.nonlinear, 1.0 / (spec_.p - 2.0));
}

SolveReport DiscreteProblem::solve_ground_state(const Field& init,
                                                const SolveOptions& opts) const {
  SolveReport rep;
  rep.u = cone_project(init);

  auto collapsed = [&](const Field& u) { return u.max_abs() < 1e-10; };
  auto try_rescale = [&](Field& u) {
    if (collapsed(u)) return false;
    double D = op_->dirichlet_form(u, u);
    const auto& M = op_->mass();
    double phi = 0.0;
    for (int k = 0; k < u.size(); ++k)
      phi += M[k] * a_[k] * std::pow(std::max(u.data()[k], 0.0), spec_.p);
    if (!(phi > 0.0) || !(D > 0.0)) return false;
    double alpha = std::pow(D / phi, 1.0 / (spec_.p - 2.0));
    if (!std::isfinite(alpha) || !(alpha > 0.0)) return false;
    scale_inplace(u, alpha);
    rep.nehari_alpha = alpha;
    return true;
  };

  if (!try_rescale(rep.u)) {
    rep.message = "initializer collapsed";
    return rep;
  }
  double E = energy(rep.u).total;

  double tau = opts.tau0;
  // Full steps can enter a flat two-cycle (the energy test accepts them, the
  // residual stops moving). A sticky step cap engages after a run of such
  // steps; damping kills oscillatory multipliers near -1. When halving the
  // cap does not help either, the iterate is a fixed point of the projected
  // map whose projection stays active; the projection is then released so
  // the iteration can reach the actual discrete solution, and the release is
  // reported.
  double tau_cap = 1.0;
  int flat_steps = 0;
  int cap_halvings = 0;
  bool project = true;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iter; ++it) {
    rep.iterations = it;
    Field f = nonlinear_rhs(rep.u);
    Field v = op_->solve(f);
    rep.el_residual = op_->relative_residual(rep.u, f);
    Field diff = lincomb(1.0, rep.u, -1.0, v);
    double un = op_->mu_norm(rep.u);
    rep.invariance_gap = un > 0.0 ? op_->mu_norm(diff) / un : 0.0;
    if (opts.monitor) opts.monitor(it, rep.el_residual, E);
    if (rep.el_residual <= opts.tol) {
      rep.converged = true;
      rep.message = rep.projection_released
                        ? "converged (cone projection released after stall)"
                        : "converged";
      break;
    }
    bool res_progress = rep.el_residual < 0.99 * best_res;
    best_res = std::min(best_res, rep.el_residual);

    tau = std::min(tau_cap, 2.0 * tau);
    bool accepted = false;
    bool energy_drop = false;
    while (tau >= opts.min_tau) {
      Field cand = lincomb(1.0 - tau, rep.u, tau, v);
      if (project) cand = cone_project(cand);
      if (try_rescale(cand)) {
        double Ec = energy(cand).total;
        if (Ec <= E + 1e-12 * (1.0 + std::abs(E))) {
          energy_drop = Ec <= E - 1e-12 * (1.0 + std::abs(E));
          rep.u = std::move(cand);
          E = Ec;
          rep.tau = tau;
          accepted = true;
          break;
        }
      }
      tau *= 0.5;
    }
    if (!accepted) {
      rep.message = "line search stalled above tolerance";
      break;
    }
    if (energy_drop || res_progress) {
      flat_steps = 0;
    } else if (++flat_steps >= 8) {
      if (project && ++cap_halvings > 4) {
        project = false;
        rep.projection_released = true;
        tau_cap = 1.0;
        tau = 1.0;
      } else {
        tau_cap = std::max(opts.min_tau, 0.5 * tau_cap);
        tau = std::min(tau, tau_cap);
      }
      flat_steps = 0;
    }
    if (collapsed(rep.u)) {
      rep.message = "iterate collapsed";
      return rep;
    }
  }
  if (!rep.converged && rep.message.empty())
    rep.message = "iteration limit reached";

  Field f = nonlinear_rhs(rep.u);
  rep.el_residual = op_->relative_residual(rep.u, f);
  Field v = op_->solve(f);
  double un = op_->mu_norm(rep.u);
  rep.invariance_gap =
      un > 0.0 ? op_->mu_norm(lincomb(1.0, rep.u, -1.0, v)) / un : 0.0;
  if (rep.el_residual <= opts.tol) {
    rep.converged = true;
    rep.message = rep.projection_released
                      ? "converged (cone projection released after stall)"
                      : "converged";
  }
  rep.energy = energy(rep.u);
  rep.cone = cone_check(rep.u);
  return rep;
}

InvarianceCertificate DiscreteProblem::certify_invariance(
    const Field& u) const {
  InvarianceCertificate cert;
  cert.v = invariance_map(u, &cert.linear);
  cert.cone_of_image = cone_check(cert.v);
  double un = op_->mu_norm(u);
  cert.gap = un > 0.0
                 ? op_->mu_norm(lincomb(1.0, u, -1.0, cert.v)) / un
                 : 0.0;
  return cert;
}

}  // namespace drev
