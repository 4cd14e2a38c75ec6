#ifndef DREV_OPERATOR_HPP
#define DREV_OPERATOR_HPP

#include <Eigen/Sparse>
#include <memory>

#include "drev/grid.hpp"

namespace drev {

struct LinearSolveInfo {
  bool direct = false;
  int iterations = 0;          // PCG iterations (0 for direct)
  double relative_residual = 0.0;  // sqrt(r' M^{-1} r / f' M f)
};

// Discrete weighted Laplacian on a grid. Assembled once, immutable.
//
// The Dirichlet energy integral(|grad u|^2 dmu) over the section becomes, in
// mapped (theta, rho) coordinates,
//   integral( alpha u_rho^2 + beta u_theta^2 - 2 gamma u_theta u_rho ),
//   alpha = r^{N-1} omega (1 + e^2/r^2) / w,  beta = r^{N-3} omega w,
//   gamma = e r^{N-3} omega,  e = g1' + rho w',  w = g2 - g1,
// which is assembled into a symmetric stiffness matrix S (rho and theta face
// terms plus a cross term quadratured on interior theta faces). M is the
// lumped diagonal mass for
// dmu. The operator is L = M^{-1} S, so  <L u, v>_mu = u' S v  exactly and the
// discrete integration-by-parts identity holds to rounding.
class WeightedOperator {
 public:
  // direct_limit caps the unknown count for the eager sparse factorization;
  // larger systems fall back to preconditioned CG per solve.
  explicit WeightedOperator(std::shared_ptr<const Grid> grid,
                            int direct_limit = kDirectLimit);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

  const Eigen::SparseMatrix<double>& stiffness() const { return S_; }
  const Eigen::VectorXd& mass() const { return M_; }
  bool direct() const { return static_cast<bool>(ldlt_); }

  // L u = M^{-1} S u at interior nodes.
  Field apply(const Field& u) const;

  // u' S v (the Dirichlet form) and the dmu inner product u' M v.
  double dirichlet_form(const Field& u, const Field& v) const;
  double mu_dot(const Field& u, const Field& v) const;
  double mu_norm(const Field& u) const;

  // Solves L u = f (i.e. S u = M f) with homogeneous Dirichlet data in rho.
  // Direct sparse Cholesky below the size threshold, Jacobi-preconditioned CG
  // above it. The returned solution is residual-checked; throws when the
  // relative residual exceeds the gate (1e-10 direct, 1e-8 iterative).
  Field solve(const Field& f, LinearSolveInfo* info = nullptr) const;

  // sqrt(r' M^{-1} r) / sqrt(f' M f) with r = S u - M f; the relative
  // strong-form residual of u as a solution of L u = f.
  double relative_residual(const Field& u, const Field& f) const;

  static constexpr int kDirectLimit = 200000;
  static constexpr double kDirectGate = 1e-10;
  static constexpr double kIterativeGate = 1e-8;

 private:
  Eigen::VectorXd solve_vector(const Eigen::VectorXd& rhs,
                               LinearSolveInfo* info) const;

  std::shared_ptr<const Grid> grid_;
  Eigen::SparseMatrix<double> S_;
  Eigen::VectorXd M_;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
};

std::shared_ptr<const WeightedOperator> make_operator(
    std::shared_ptr<const Grid> grid,
    int direct_limit = WeightedOperator::kDirectLimit);

}  // namespace drev

#endif
