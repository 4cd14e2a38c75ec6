#include "drev/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drev {

namespace {
double angular_weight(const Decomposition& d, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return std::pow(c, d.m - 1) * std::pow(s, d.n - 1);
}
}  // namespace

Grid::Grid(Decomposition decomp, DomainProfile profile, int n_theta, int n_rho)
    : decomp_(decomp), profile_(std::move(profile)), n_theta_(n_theta),
      n_rho_(n_rho) {
  if (n_theta_ < 4 || n_rho_ < 4)
    throw std::invalid_argument("grid requires n_theta >= 4 and n_rho >= 4");
  dtheta_ = profile_.theta_max() / n_theta_;
  drho_ = 1.0 / n_rho_;

  theta_.resize(n_theta_);
  g1_.resize(n_theta_);
  width_.resize(n_theta_);
  dg1_.resize(n_theta_);
  dwidth_.resize(n_theta_);
  omega_.resize(n_theta_);
  for (int j = 0; j < n_theta_; ++j) {
    double th = (j + 0.5) * dtheta_;
    theta_[j] = th;
    g1_[j] = profile_.g1(th);
    width_[j] = profile_.g2(th) - g1_[j];
    dg1_[j] = profile_.dg1(th);
    dwidth_[j] = profile_.dg2(th) - dg1_[j];
    omega_[j] = angular_weight(decomp_, th);
    if (!(g1_[j] > 0.0))
      throw std::invalid_argument("inner boundary curve must stay positive");
    if (!(width_[j] > 0.0))
      throw std::invalid_argument("profile has non-positive width at a node");
    if (!std::isfinite(dg1_[j]) || !std::isfinite(dwidth_[j]))
      throw std::invalid_argument("profile derivative not finite at a node");
    double cell = omega_[j] * width_[j] *
                  std::pow(g1_[j], decomp_.N() - 1) * dtheta_ * drho_;
    if (!(cell > std::numeric_limits<double>::min()))
      throw std::invalid_argument("cell measure underflows at a node");
  }

  g1f_.resize(n_theta_ + 1);
  widthf_.resize(n_theta_ + 1);
  omegaf_.resize(n_theta_ + 1);
  for (int j = 1; j < n_theta_; ++j) {
    double th = dtheta_ * j;
    g1f_[j] = profile_.g1(th);
    widthf_[j] = profile_.g2(th) - g1f_[j];
    omegaf_[j] = angular_weight(decomp_, th);
    if (!(widthf_[j] > 0.0))
      throw std::invalid_argument("profile has non-positive width at a face");
  }
}

double Grid::s(int i, int j) const { return r(i, j) * std::cos(theta_[j]); }
double Grid::t(int i, int j) const { return r(i, j) * std::sin(theta_[j]); }

double Grid::cell_measure(int i, int j) const {
  double rr = r(i, j);
  return omega_[j] * width_[j] * std::pow(rr, decomp_.N() - 1) * dtheta_ *
         drho_;
}

Field::Field(std::shared_ptr<const Grid> grid, double fill)
    : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
  values_.assign(grid_->interior_count(), fill);
}

Field::Field(std::shared_ptr<const Grid> grid,
             std::vector<double> interior_values)
    : grid_(std::move(grid)), values_(std::move(interior_values)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
  if (static_cast<int>(values_.size()) != grid_->interior_count())
    throw std::invalid_argument("field size does not match grid");
}

double Field::at(int i, int j) const {
  if (i <= 0 || i >= grid_->n_rho()) return 0.0;
  return values_[grid_->index(i, j)];
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::min(m, v);
  return values_.empty() ? 0.0 : m;
}

double Field::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::max(m, v);
  return values_.empty() ? 0.0 : m;
}

void Field::require_finite(const char* where) const {
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::runtime_error(std::string("non-finite field value in ") +
                               where);
}

std::shared_ptr<const Grid> make_grid(Decomposition decomp,
                                      DomainProfile profile, int n_theta,
                                      int n_rho) {
  return std::make_shared<const Grid>(decomp, std::move(profile), n_theta,
                                      n_rho);
}

Field sample_field(std::shared_ptr<const Grid> grid,
                   const std::function<double(double, double)>& f_theta_r) {
  Field out(grid);
  const Grid& g = *grid;
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      out.interior(i, j) = f_theta_r(g.theta(j), g.r(i, j));
  return out;
}

double quadrature(const Grid& grid,
                  const std::function<double(double, double)>& f_theta_r) {
  double total = 0.0;
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int i = 0; i <= grid.n_rho(); ++i) {
      double w = (i == 0 || i == grid.n_rho()) ? 0.5 : 1.0;
      total += w * grid.cell_measure(i, j) *
               f_theta_r(grid.theta(j), grid.r(i, j));
    }
  }
  return total;
}

double quadrature(const Field& nodal) {
  const Grid& g = nodal.grid();
  double total = 0.0;
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      total += g.cell_measure(i, j) * nodal.interior(i, j);
  return total;
}

}  // namespace drev
