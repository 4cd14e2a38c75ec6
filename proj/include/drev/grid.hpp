#ifndef DREV_GRID_HPP
#define DREV_GRID_HPP

#include <memory>
#include <vector>

#include "drev/geometry.hpp"

namespace drev {

// Tensor grid on the mapped rectangle (theta, rho) in [0, theta_max] x [0,1],
//   r(theta, rho) = g1(theta) + rho * (g2(theta) - g1(theta)).
// Theta nodes are staggered, theta_j = (j + 1/2) * dtheta, so the zero-flux
// conditions at theta = 0 and theta = theta_max (symmetry for annular
// sections, degenerate closing face for toroidal ones) hold without boundary
// rows. Rho nodes are rho_i = i / n_rho with homogeneous Dirichlet values at
// i = 0 and i = n_rho; interior unknowns are i = 1 .. n_rho-1.
//
// Interior index: idx(i, j) = (i-1) * n_theta + j  (theta fastest), so a
// constant-rho line is contiguous.
class Grid {
 public:
  Grid(Decomposition decomp, DomainProfile profile, int n_theta, int n_rho);

  const Decomposition& decomp() const { return decomp_; }
  const DomainProfile& profile() const { return profile_; }
  int n_theta() const { return n_theta_; }
  int n_rho() const { return n_rho_; }
  double dtheta() const { return dtheta_; }
  double drho() const { return drho_; }
  int interior_count() const { return (n_rho_ - 1) * n_theta_; }

  int index(int i, int j) const { return (i - 1) * n_theta_ + j; }

  double theta(int j) const { return theta_[j]; }
  double theta_face(int j) const { return dtheta_ * j; }  // j = 0 .. n_theta
  double rho(int i) const { return drho_ * i; }            // i = 0 .. n_rho
  double r(int i, int j) const { return g1_[j] + rho(i) * width_[j]; }
  double s(int i, int j) const;
  double t(int i, int j) const;

  // Profile samples at theta nodes.
  double g1(int j) const { return g1_[j]; }
  double width(int j) const { return width_[j]; }
  double dg1(int j) const { return dg1_[j]; }
  double dwidth(int j) const { return dwidth_[j]; }
  double omega(int j) const { return omega_[j]; }

  // Profile samples at interior theta faces (j = 1 .. n_theta-1).
  double g1_face(int j) const { return g1f_[j]; }
  double width_face(int j) const { return widthf_[j]; }
  double omega_face(int j) const { return omegaf_[j]; }

  // Lumped measure of the cell around interior node (i, j):
  //   r^{N-1} omega(theta) * width * dtheta * drho.
  double cell_measure(int i, int j) const;

 private:
  Decomposition decomp_;
  DomainProfile profile_;
  int n_theta_ = 0, n_rho_ = 0;
  double dtheta_ = 0.0, drho_ = 0.0;
  std::vector<double> theta_, g1_, width_, dg1_, dwidth_, omega_;
  std::vector<double> g1f_, widthf_, omegaf_;
};

// Nodal field on a grid: interior values stored, boundary values identically
// zero. Copying is cheap in the grid (shared).
class Field {
 public:
  Field() = default;
  explicit Field(std::shared_ptr<const Grid> grid, double fill = 0.0);
  Field(std::shared_ptr<const Grid> grid, std::vector<double> interior_values);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  bool empty() const { return !grid_; }

  int size() const { return static_cast<int>(values_.size()); }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  // Value at any node, boundary included (returns 0 there).
  double at(int i, int j) const;
  double& interior(int i, int j) { return values_[grid_->index(i, j)]; }
  double interior(int i, int j) const { return values_[grid_->index(i, j)]; }

  double max_abs() const;
  double min_value() const;
  double max_value() const;

  // All values finite; throws otherwise. Called by consumers that require it.
  void require_finite(const char* where) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
};

std::shared_ptr<const Grid> make_grid(Decomposition decomp,
                                      DomainProfile profile, int n_theta,
                                      int n_rho);

// Samples a function of (theta, r) at interior nodes.
Field sample_field(std::shared_ptr<const Grid> grid,
                   const std::function<double(double, double)>& f_theta_r);

// Weighted integral over the whole section of a function given by its nodal
// values (boundary included): sum of node values times cell measures, with
// half cells at the Dirichlet edges.
double quadrature(const Grid& grid,
                  const std::function<double(double, double)>& f_theta_r);
double quadrature(const Field& nodal);  // boundary values are zero

}  // namespace drev

#endif
