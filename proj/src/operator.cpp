#include "drev/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace drev {

namespace {

double alpha_coeff(const Grid& g, int j, double rho) {
  int N = g.decomp().N();
  double w = g.width(j);
  double r = g.g1(j) + rho * w;
  double e = g.dg1(j) + rho * g.dwidth(j);
  return std::pow(r, N - 1) * g.omega(j) * (1.0 + e * e / (r * r)) / w;
}

double beta_face_coeff(const Grid& g, int jface, double rho) {
  int N = g.decomp().N();
  double w = g.width_face(jface);
  double r = g.g1_face(jface) + rho * w;
  return std::pow(r, N - 3) * g.omega_face(jface) * w;
}

struct Stencil {
  int idx[2];
  double coef[2];
  int count = 0;
};

struct StencilR {
  int idx[4];
  double coef[4];
  int count = 0;
};

}  // namespace

WeightedOperator::WeightedOperator(std::shared_ptr<const Grid> grid,
                                   int direct_limit)
    : grid_(std::move(grid)) {
  const Grid& g = *grid_;
  const int J = g.n_theta();
  const int I = g.n_rho();
  const int n = g.interior_count();
  const double dth = g.dtheta();
  const double drh = g.drho();

  M_.resize(n);
  for (int i = 1; i < I; ++i)
    for (int j = 0; j < J; ++j) M_[g.index(i, j)] = g.cell_measure(i, j);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(n) * 13);
  auto add = [&](int a, int b, double v) { trips.emplace_back(a, b, v); };

  // Radial face fluxes, Dirichlet values at i = 0 and i = I folded in.
  for (int j = 0; j < J; ++j) {
    for (int i = 0; i < I; ++i) {
      double k = (dth / drh) * alpha_coeff(g, j, (i + 0.5) * drh);
      int lo = (i >= 1) ? g.index(i, j) : -1;
      int hi = (i + 1 <= I - 1) ? g.index(i + 1, j) : -1;
      if (lo >= 0) add(lo, lo, k);
      if (hi >= 0) add(hi, hi, k);
      if (lo >= 0 && hi >= 0) {
        add(lo, hi, -k);
        add(hi, lo, -k);
      }
    }
  }

  // Angular face fluxes between staggered nodes; the outermost faces carry no
  // flux (symmetry at theta = 0 and theta_max, exact for the closing face of
  // a toroidal section where the width vanishes).
  for (int jf = 1; jf < J; ++jf) {
    for (int i = 1; i < I; ++i) {
      double k = (drh / dth) * beta_face_coeff(g, jf, g.rho(i));
      int a = g.index(i, jf - 1);
      int b = g.index(i, jf);
      add(a, a, k);
      add(b, b, k);
      add(a, b, -k);
      add(b, a, -k);
    }
  }

  // Cross term from the theta-dependent radial map, assembled on interior
  // theta faces: gamma at the face midpoint pairs the face difference in
  // theta with the averaged centered difference in rho. Vanishes identically
  // on annuli; every quadrature point is interior, so no one-sided losses.
  const DomainProfile& prof = g.profile();
  for (int jf = 1; jf < J; ++jf) {
    double thf = g.theta_face(jf);
    double e0 = prof.dg1(thf);
    double e1 = prof.dg2(thf) - prof.dg1(thf);
    for (int i = 1; i < I; ++i) {
      double rho = g.rho(i);
      double e = e0 + rho * e1;
      double rf = g.g1_face(jf) + rho * g.width_face(jf);
      double gam = e * std::pow(rf, g.decomp().N() - 3) * g.omega_face(jf);
      double q = gam * dth * drh;
      if (q == 0.0) continue;
      Stencil st;  // face difference in theta
      st.idx[st.count] = g.index(i, jf), st.coef[st.count++] = 1.0 / dth;
      st.idx[st.count] = g.index(i, jf - 1), st.coef[st.count++] = -1.0 / dth;
      StencilR sr;  // averaged centered rho differences of both face neighbors
      double c = 1.0 / (4.0 * drh);
      for (int jn : {jf - 1, jf}) {
        if (i + 1 <= I - 1)
          sr.idx[sr.count] = g.index(i + 1, jn), sr.coef[sr.count++] = c;
        if (i - 1 >= 1)
          sr.idx[sr.count] = g.index(i - 1, jn), sr.coef[sr.count++] = -c;
      }
      for (int a = 0; a < st.count; ++a)
        for (int b = 0; b < sr.count; ++b) {
          double v = -q * st.coef[a] * sr.coef[b];
          add(st.idx[a], sr.idx[b], v);
          add(sr.idx[b], st.idx[a], v);
        }
    }
  }

  S_.resize(n, n);
  S_.setFromTriplets(trips.begin(), trips.end());
  S_.makeCompressed();

  if (n <= direct_limit) {
    ldlt_ = std::make_unique<
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    ldlt_->compute(S_);
    if (ldlt_->info() != Eigen::Success)
      throw std::runtime_error("stiffness factorization failed");
  }
}

Field WeightedOperator::apply(const Field& u) const {
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  Eigen::VectorXd out = S_ * uv;
  out.array() /= M_.array();
  return Field(grid_, std::vector<double>(out.data(), out.data() + out.size()));
}

double WeightedOperator::dirichlet_form(const Field& u, const Field& v) const {
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  Eigen::Map<const Eigen::VectorXd> vv(v.data(), v.size());
  return uv.dot(S_ * vv);
}

double WeightedOperator::mu_dot(const Field& u, const Field& v) const {
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  Eigen::Map<const Eigen::VectorXd> vv(v.data(), v.size());
  return uv.dot(M_.asDiagonal() * vv);
}

double WeightedOperator::mu_norm(const Field& u) const {
  return std::sqrt(std::max(0.0, mu_dot(u, u)));
}

Eigen::VectorXd WeightedOperator::solve_vector(const Eigen::VectorXd& rhs,
                                               LinearSolveInfo* info) const {
  if (ldlt_) {
    Eigen::VectorXd x = ldlt_->solve(rhs);
    if (info) {
      info->direct = true;
      info->iterations = 0;
    }
    return x;
  }
  // Jacobi-preconditioned conjugate gradients.
  Eigen::VectorXd diag = S_.diagonal();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = r.array() / diag.array();
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  double tol = 1e-12 * rhs.norm();
  int it = 0;
  const int max_it = 40 * static_cast<int>(rhs.size());
  while (r.norm() > tol && it < max_it) {
    Eigen::VectorXd q = S_ * p;
    double a = rz / p.dot(q);
    x += a * p;
    r -= a * q;
    z = r.array() / diag.array();
    double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++it;
  }
  if (info) {
    info->direct = false;
    info->iterations = it;
  }
  return x;
}

Field WeightedOperator::solve(const Field& f, LinearSolveInfo* info) const {
  f.require_finite("dirichlet solve rhs");
  Eigen::Map<const Eigen::VectorXd> fv(f.data(), f.size());
  Eigen::VectorXd rhs = M_.asDiagonal() * fv;
  LinearSolveInfo local;
  Eigen::VectorXd x = solve_vector(rhs, &local);

  auto mu_residual = [&](const Eigen::VectorXd& xv) {
    Eigen::VectorXd r = S_ * xv - rhs;
    double num = (r.array().square() / M_.array()).sum();
    double den = (M_.array() * fv.array().square()).sum();
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  };
  double gate = local.direct ? kDirectGate : kIterativeGate;
  double rel = mu_residual(x);
  if (rel > gate && ldlt_) {
    // one step of iterative refinement
    Eigen::VectorXd r = rhs - S_ * x;
    x += ldlt_->solve(r);
    rel = mu_residual(x);
  }
  if (rel > gate) throw std::runtime_error("linear solve residual gate failed");
  local.relative_residual = rel;
  if (info) *info = local;
  return Field(grid_, std::vector<double>(x.data(), x.data() + x.size()));
}

double WeightedOperator::relative_residual(const Field& u,
                                           const Field& f) const {
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), u.size());
  Eigen::Map<const Eigen::VectorXd> fv(f.data(), f.size());
  Eigen::VectorXd r = S_ * uv - (M_.asDiagonal() * fv).eval();
  double num = (r.array().square() / M_.array()).sum();
  double den = (M_.array() * fv.array().square()).sum();
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::shared_ptr<const WeightedOperator> make_operator(
    std::shared_ptr<const Grid> grid, int direct_limit) {
  return std::make_shared<const WeightedOperator>(std::move(grid),
                                                  direct_limit);
}

}  // namespace drev
