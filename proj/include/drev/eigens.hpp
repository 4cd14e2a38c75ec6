#ifndef DREV_EIGENS_HPP
#define DREV_EIGENS_HPP

#include <vector>

#include "drev/geometry.hpp"

namespace drev {

// Smallest nonzero eigenvalue of the angular problem on (0, pi/2),
//   -(omega psi')' = mu omega psi,  omega = cos^{m-1} sin^{n-1},
// with no-flux ends. mu0 = 0 belongs to constants; mu1 is the first
// symmetry-breaking mode. psi1 is normalized to max-abs one and oriented
// nonincreasing in theta.
struct AngularResult {
  Decomposition decomp;
  int n_theta = 0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  std::vector<double> theta;  // staggered nodes
  std::vector<double> psi1;
  // Dirichlet form and weighted mass of the normalized psi1 (their ratio is
  // mu1); consumed by the second-variation functional.
  double psi1_dirichlet = 0.0;
  double psi1_mass = 0.0;
  int iterations = 0;
};

AngularResult angular_eigenpair(Decomposition decomp, int n_theta);

// Smallest eigenvalue of the weighted radial problem on (R1, R2),
//   -(r^{N-1} w')' = lambda r^{N-3} w,  w(R1) = w(R2) = 0,
// the sharp constant in the Hardy-type inequality
//   integral(u_r^2 r^{N-1}) >= lambda1 integral(u^2 r^{N-3}).
struct HardyResult {
  int N = 0;
  double R1 = 0.0, R2 = 0.0;
  int n_r = 0;
  double lambda1 = 0.0;
  std::vector<double> r;  // all nodes, R1 .. R2
  std::vector<double> w;  // eigenfunction, zero at both ends, max-abs one
  int iterations = 0;
};

HardyResult hardy_smallest(int N, double R1, double R2, int n_r);

struct ThinAnnulusEntry {
  double R = 0.0;
  double R2 = 0.0;
  double lambda = 0.0;
  double ratio = 0.0;      // lambda / R^2
  double deviation = 0.0;  // |ratio - pi^2|
};

// lambda1 on the annulus (R, gamma(R)) for each R, reported against the
// thin-annulus limit lambda/R^2 -> pi^2 when gamma(R) - R stays bounded.
std::vector<ThinAnnulusEntry> thin_annulus_sweep(
    int N, const std::vector<double>& R_values,
    const std::function<double(double)>& gamma, int n_r);

}  // namespace drev

#endif
