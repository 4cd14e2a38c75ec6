#include "drev/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drev {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double nonradiality(const Field& u) {
  const Grid& g = u.grid();
  double sup = u.max_abs();
  if (!(sup > 0.0)) return 0.0;
  double osc = 0.0;
  for (int i = 1; i < g.n_rho(); ++i) {
    double lo = u.interior(i, 0), hi = lo;
    for (int j = 1; j < g.n_theta(); ++j) {
      double v = u.interior(i, j);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    osc = std::max(osc, hi - lo);
  }
  return osc / sup;
}

Field interpolate_radial(std::shared_ptr<const Grid> grid,
                         const RadialSolution& sol) {
  Field out(grid);
  const Grid& g = *grid;
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      out.interior(i, j) = sol.value(g.r(i, j));
  return out;
}

Field perturbed_radial_init(const DiscreteProblem& dp, const RadialSolution& sol,
                            const AngularResult& angular, double delta) {
  const Grid& g = dp.grid();
  if (angular.n_theta != g.n_theta())
    throw std::invalid_argument(
        "angular resolution must match the grid for the perturbed init");
  if (std::abs(g.profile().theta_max() - kPi / 2.0) > 1e-12)
    throw std::invalid_argument(
        "perturbed radial initializers need the full angular range");
  Field out(dp.grid_ptr());
  for (int i = 1; i < g.n_rho(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      double factor = 1.0 + delta * angular.psi1[j];
      out.interior(i, j) = sol.value(g.r(i, j)) * factor;
    }
  }
  return out;
}

SecondVariation second_variation(const RadialSolution& sol,
                                 const AngularResult& angular, double p,
                                 const std::function<double(double)>& a_of_r) {
  const int N = sol.N;
  SecondVariation sv;
  sv.mu1 = angular.mu1;
  sv.i_kin = radial_integral(sol, [&](double r, double, double du) {
    return du * du * std::pow(r, N - 1);
  });
  sv.i_pot = radial_integral(sol, [&](double r, double u, double) {
    double up = std::max(u, 0.0);
    return a_of_r(r) * std::pow(up, p) * std::pow(r, N - 1);
  });
  sv.i_hardy = radial_integral(sol, [&](double r, double u, double) {
    return u * u * std::pow(r, N - 3);
  });
  sv.kinetic = angular.psi1_mass * sv.i_kin;
  sv.angular = angular.psi1_dirichlet * sv.i_hardy;
  sv.potential = (p - 1.0) * angular.psi1_mass * sv.i_pot;
  sv.value = sv.kinetic + sv.angular - sv.potential;
  sv.negative = sv.value < 0.0;
  return sv;
}

double breaking_threshold(int N, double lambda1) {
  if (!(lambda1 > 0.0)) throw std::invalid_argument("lambda1 must be positive");
  return 2.0 * N / lambda1;
}

SymmetryReport symmetry_report(const DiscreteProblem& dp, const Field& u,
                               const RadialSolution& radial_ref) {
  SymmetryReport rep;
  rep.nonradiality = nonradiality(u);
  rep.nonradial = rep.nonradiality >= kNonradialThreshold;
  rep.energy = dp.energy(u).total;
  Field ref = interpolate_radial(dp.grid_ptr(), radial_ref);
  double alpha = dp.nehari_scale(ref);
  for (double& v : ref.values()) v *= alpha;
  rep.radial_energy = dp.energy(ref).total;
  rep.energy_gap = rep.energy - rep.radial_energy;
  return rep;
}

MultiplicityResult multiplicity_sweep(int N, double R1, double R2, double p,
                                      const std::function<double(double)>& a_of_r,
                                      int k, const MultiplicityOptions& opts) {
  if (N < 2) throw std::invalid_argument("dimension must be >= 2");
  if (k < 1 || k > N / 2)
    throw std::invalid_argument("k must lie in 1 .. floor(N/2)");

  MultiplicityResult out;
  out.N = N;
  out.p = p;
  out.lambda1 = hardy_smallest(N, R1, R2, opts.hardy_n_r).lambda1;
  out.p_lower = 2.0 + breaking_threshold(N, out.lambda1);
  out.p_upper = (k > 1) ? (2.0 * k + 2.0) / (k - 1.0)
                        : std::numeric_limits<double>::infinity();
  out.window_ok = (p > out.p_lower) && (p < out.p_upper);

  RadialSolution rad;
  {
    ShootOptions sh;
    sh.n_steps = opts.radial_steps;
    rad = shoot_radial(N, R1, R2, p, a_of_r, sh);
  }

  for (int b = 0; b < k; ++b) {
    Decomposition dec(N - 1 - b, 1 + b);
    auto angular = angular_eigenpair(dec, opts.n_theta);
    auto spec = make_problem(dec, DomainProfile::annulus(R1, R2),
                             Coefficient::radial(a_of_r), p);
    DiscreteProblem dp(std::move(spec), opts.n_theta, opts.n_rho);
    Field init = perturbed_radial_init(dp, rad, angular, opts.delta);
    BranchResult br;
    br.decomp = dec;
    br.mu1 = angular.mu1;
    br.report = dp.solve_ground_state(init, opts.solve);
    br.symmetry = symmetry_report(dp, br.report.u, rad);
    out.branches.push_back(std::move(br));
  }

  for (size_t i = 0; i < out.branches.size(); ++i) {
    for (size_t j = i + 1; j < out.branches.size(); ++j) {
      const auto& a = out.branches[i];
      const auto& b = out.branches[j];
      if (a.symmetry.nonradial && b.symmetry.nonradial) {
        out.distinct_pairs.emplace_back(static_cast<int>(i),
                                        static_cast<int>(j));
        double sup = 0.0;
        for (int idx = 0; idx < a.report.u.size(); ++idx)
          sup = std::max(sup, std::abs(a.report.u.data()[idx] -
                                       b.report.u.data()[idx]));
        out.pair_sup_difference.push_back(sup);
      }
    }
  }
  return out;
}

}  // namespace drev
