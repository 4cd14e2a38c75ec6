#ifndef DREV_ANALYSIS_HPP
#define DREV_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "drev/eigens.hpp"
#include "drev/radial.hpp"
#include "drev/solver.hpp"

namespace drev {

// Nonradial oscillation of a nodal field: the largest theta-oscillation over
// constant-rho lines, relative to the sup norm. A solution is flagged
// nonradial when this exceeds kNonradialThreshold.
inline constexpr double kNonradialThreshold = 1e-3;
double nonradiality(const Field& u);

// Radial profile carried onto a grid (cubic Hermite in r).
Field interpolate_radial(std::shared_ptr<const Grid> grid,
                         const RadialSolution& sol);

// u_rad(r) (1 + delta psi1(theta)) on the grid; psi1 must have been computed
// at the same angular resolution so the staggered nodes line up. The antitone
// orientation of psi1 keeps the perturbation inside the monotone cone for
// delta in (0, 1/max|psi1| ).
Field perturbed_radial_init(const DiscreteProblem& dp, const RadialSolution& sol,
                            const AngularResult& angular, double delta);

// Second variation of the energy at a radial solution along the separated
// direction v = u(r) psi1(theta):
//   M = <psi,psi>_omega [ I_kin - (p-1) I_pot ] + <psi',psi'>_omega I_hardy,
// with I_kin = integral(u_r^2 r^{N-1}), I_pot = integral(a u^p r^{N-1}),
// I_hardy = integral(u^2 r^{N-3}). Negative M certifies an energy-decreasing
// angular perturbation, hence symmetry breaking of the ground state.
struct SecondVariation {
  double value = 0.0;
  double kinetic = 0.0;       // <psi,psi> I_kin
  double angular = 0.0;       // <psi',psi'> I_hardy
  double potential = 0.0;     // (p-1) <psi,psi> I_pot
  double i_kin = 0.0, i_pot = 0.0, i_hardy = 0.0;
  double mu1 = 0.0;
  bool negative = false;
};

SecondVariation second_variation(const RadialSolution& sol,
                                 const AngularResult& angular, double p,
                                 const std::function<double(double)>& a_of_r);

// Sufficient condition for symmetry breaking: p - 2 > 2N/lambda1.
double breaking_threshold(int N, double lambda1);

struct SymmetryReport {
  double nonradiality = 0.0;
  bool nonradial = false;
  double energy = 0.0;         // E of the candidate
  double radial_energy = 0.0;  // E of the rescaled interpolated radial profile
  double energy_gap = 0.0;     // energy - radial_energy (negative: below)
};

SymmetryReport symmetry_report(const DiscreteProblem& dp, const Field& u,
                               const RadialSolution& radial_ref);

// One branch of the multiplicity construction: the decomposition, its solve
// and its symmetry diagnostics.
struct BranchResult {
  Decomposition decomp;
  SolveReport report;
  SymmetryReport symmetry;
  double mu1 = 0.0;
};

struct MultiplicityResult {
  int N = 0;
  double p = 0.0;
  double lambda1 = 0.0;
  double p_lower = 0.0;  // 2 + 2N/lambda1: breaking on every branch above it
  double p_upper = 0.0;  // (2k+2)/(k-1): variational window for k branches
  bool window_ok = false;
  std::vector<BranchResult> branches;
  // Pairs flagged distinct: both branch solutions nonradial (solutions of
  // different decompositions coincide only when both are radial).
  std::vector<std::pair<int, int>> distinct_pairs;
  // Supremum difference of the paired nodal values, for the record.
  std::vector<double> pair_sup_difference;
};

struct MultiplicityOptions {
  int n_theta = 64;
  int n_rho = 96;
  double delta = 0.2;  // relative size of the angular perturbation
  int radial_steps = 16384;
  int hardy_n_r = 4096;
  SolveOptions solve;
};

// Runs the first k decompositions (N-1,1), (N-2,2), ... of N on the annulus
// (R1, R2) with a radial coefficient, from angularly perturbed radial
// initializers, and reports convergence, symmetry and distinctness per
// branch.
MultiplicityResult multiplicity_sweep(int N, double R1, double R2, double p,
                                      const std::function<double(double)>& a_of_r,
                                      int k, const MultiplicityOptions& opts = {});

}  // namespace drev

#endif
