#include "drev/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drev {

namespace {

struct Shot {
  bool crossed = false;
  double u_end = 0.0;
  std::vector<double> u, du;  // filled only when `record`
};

// One RK4 pass. Stops early (crossed = true) on the first sign change.
Shot integrate(int N, double R1, double R2, double p,
               const std::function<double(double)>& a_of_r, double sigma,
               int n_steps, bool record) {
  const double h = (R2 - R1) / n_steps;
  auto rhs = [&](double r, double u, double v, double& du, double& dv) {
    du = v;
    double up = u > 0.0 ? std::pow(u, p - 1.0) : 0.0;
    dv = -(N - 1) * v / r - a_of_r(r) * up;
  };
  Shot shot;
  if (record) {
    shot.u.reserve(n_steps + 1);
    shot.du.reserve(n_steps + 1);
  }
  double u = 0.0, v = sigma;
  if (record) {
    shot.u.push_back(u);
    shot.du.push_back(v);
  }
  for (int k = 0; k < n_steps; ++k) {
    double r = R1 + k * h;
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(r, u, v, k1u, k1v);
    rhs(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v, k2u, k2v);
    rhs(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v, k3u, k3v);
    rhs(r + h, u + h * k3u, v + h * k3v, k4u, k4v);
    u += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (record) {
      shot.u.push_back(u);
      shot.du.push_back(v);
    }
    if (k + 1 < n_steps && u <= 0.0) {
      shot.crossed = true;
      return shot;
    }
    if (!std::isfinite(u) || !std::isfinite(v))
      throw std::runtime_error("radial integration diverged");
  }
  shot.u_end = u;
  if (u < 0.0) shot.crossed = true;
  return shot;
}

int hermite_cell(const std::vector<double>& r, double x) {
  int n = static_cast<int>(r.size());
  if (x <= r.front()) return 0;
  if (x >= r.back()) return n - 2;
  int k = static_cast<int>((x - r.front()) / (r[1] - r[0]));
  return std::clamp(k, 0, n - 2);
}

}  // namespace

double RadialSolution::max_value() const {
  double m = 0.0;
  for (double v : u) m = std::max(m, v);
  return m;
}

double RadialSolution::value(double radius) const {
  int k = hermite_cell(r, radius);
  double h = r[k + 1] - r[k];
  double s = (radius - r[k]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  return h00 * u[k] + h * h10 * du[k] + h01 * u[k + 1] + h * h11 * du[k + 1];
}

double RadialSolution::deriv(double radius) const {
  int k = hermite_cell(r, radius);
  double h = r[k + 1] - r[k];
  double s = (radius - r[k]) / h;
  double d00 = (6 * s * s - 6 * s) / h;
  double d10 = 3 * s * s - 4 * s + 1;
  double d01 = (6 * s - 6 * s * s) / h;
  double d11 = 3 * s * s - 2 * s;
  return d00 * u[k] + d10 * du[k] + d01 * u[k + 1] + d11 * du[k + 1];
}

RadialSolution shoot_radial(int N, double R1, double R2, double p,
                            const std::function<double(double)>& a_of_r,
                            const ShootOptions& opts) {
  if (N < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(0.0 < R1 && R1 < R2))
    throw std::invalid_argument("annulus requires 0 < R1 < R2");
  if (!(p > 2.0)) throw std::invalid_argument("exponent must satisfy p > 2");
  if (opts.n_steps < 64 || opts.n_steps % 2 != 0)
    throw std::invalid_argument("n_steps must be even and >= 64");

  auto crosses = [&](double sigma) {
    return integrate(N, R1, R2, p, a_of_r, sigma, opts.n_steps, false).crossed;
  };

  double lo = opts.sigma0, hi = opts.sigma0;
  int guard = 0;
  if (crosses(lo)) {
    while (crosses(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++guard > opts.max_bracket)
        throw std::runtime_error("shooting bracket failed (all slopes cross)");
    }
  } else {
    while (!crosses(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++guard > opts.max_bracket)
        throw std::runtime_error("shooting bracket failed (no crossing)");
    }
  }
  while ((hi - lo) > opts.slope_rtol * hi) {
    double mid = 0.5 * (lo + hi);
    if (crosses(mid))
      hi = mid;
    else
      lo = mid;
  }

  Shot fin = integrate(N, R1, R2, p, a_of_r, lo, opts.n_steps, true);
  if (fin.crossed) throw std::runtime_error("shooting final pass crossed zero");

  RadialSolution sol;
  sol.N = N;
  sol.p = p;
  sol.R1 = R1;
  sol.R2 = R2;
  sol.sigma = lo;
  sol.bc_defect = std::abs(fin.u_end);
  sol.u = std::move(fin.u);
  sol.du = std::move(fin.du);
  sol.r.resize(opts.n_steps + 1);
  for (int k = 0; k <= opts.n_steps; ++k)
    sol.r[k] = R1 + (R2 - R1) * k / opts.n_steps;
  // park the profile exactly on the boundary condition
  sol.u.back() = 0.0;
  return sol;
}

double radial_integral(const RadialSolution& sol,
                       const std::function<double(double, double, double)>&
                           f_r_u_du) {
  const int n = static_cast<int>(sol.r.size()) - 1;
  if (n % 2 != 0) throw std::invalid_argument("Simpson needs an even count");
  double h = (sol.R2 - sol.R1) / n;
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    total += w * f_r_u_du(sol.r[k], sol.u[k], sol.du[k]);
  }
  return total * h / 3.0;
}

}  // namespace drev
