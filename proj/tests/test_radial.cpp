#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "drev/radial.hpp"

using namespace drev;

namespace {
RadialSolution solve_unit(int n_steps = 4096) {
  ShootOptions opts;
  opts.n_steps = n_steps;
  return shoot_radial(3, 1.0, 2.0, 4.0, [](double) { return 1.0; }, opts);
}
}  // namespace

TEST_CASE("shot profile is a positive solution with zero boundary data") {
  auto sol = solve_unit();
  CHECK(sol.u.front() == 0.0);
  CHECK(sol.u.back() == 0.0);
  CHECK(sol.bc_defect <= 1e-9 * sol.max_value());
  CHECK(sol.sigma > 0.0);
  CHECK(sol.max_value() > 0.0);
  for (size_t i = 1; i + 1 < sol.u.size(); ++i) CHECK(sol.u[i] > 0.0);
}

TEST_CASE("shot profile satisfies the equation pointwise") {
  // Independent check: five-point finite differences of the stored values
  // must reproduce u'' + (N-1) u'/r + u^{p-1} = 0 away from the ends.
  auto sol = solve_unit();
  const int n = static_cast<int>(sol.r.size());
  const double h = (sol.R2 - sol.R1) / (n - 1);
  double scale = std::pow(sol.max_value(), sol.p - 1.0);
  double worst = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    double upp = (-sol.u[i - 2] + 16 * sol.u[i - 1] - 30 * sol.u[i] +
                  16 * sol.u[i + 1] - sol.u[i + 2]) /
                 (12 * h * h);
    double up = (sol.u[i - 2] - 8 * sol.u[i - 1] + 8 * sol.u[i + 1] -
                 sol.u[i + 2]) /
                (12 * h);
    double res = upp + (sol.N - 1) * up / sol.r[i] +
                 std::pow(sol.u[i], sol.p - 1.0);
    worst = std::max(worst, std::abs(res));
  }
  CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("stored derivative agrees with the interpolant") {
  auto sol = solve_unit();
  for (double r : {1.1, 1.37, 1.62, 1.9}) {
    double d = 1e-6;
    double fd = (sol.value(r + d) - sol.value(r - d)) / (2 * d);
    CHECK(sol.deriv(r) == doctest::Approx(fd).epsilon(1e-6));
  }
  // Interpolation reproduces nodal values.
  CHECK(sol.value(sol.r[100]) == doctest::Approx(sol.u[100]).epsilon(1e-14));
}

TEST_CASE("solutions obey the supercritical scaling law") {
  // If u solves the problem on (1,2) with a = 1, then 4^{1/(p-2)} u(2r)
  // solves it on (1/2, 1).
  ShootOptions opts;
  opts.n_steps = 4096;
  auto big = shoot_radial(3, 1.0, 2.0, 4.0, [](double) { return 1.0; }, opts);
  auto half =
      shoot_radial(3, 0.5, 1.0, 4.0, [](double) { return 1.0; }, opts);
  double C = std::pow(4.0, 1.0 / (4.0 - 2.0));
  CHECK(half.max_value() == doctest::Approx(C * big.max_value()).epsilon(1e-8));
  for (double r : {0.6, 0.75, 0.9})
    CHECK(half.value(r) == doctest::Approx(C * big.value(2.0 * r)).epsilon(1e-7));
}

TEST_CASE("kinetic and potential integrals balance") {
  // Multiplying the equation by r^{N-1} u and integrating by parts gives
  // integral(r^{N-1} u'^2) = integral(r^{N-1} u^p).
  auto sol = solve_unit();
  double kin = radial_integral(sol, [&](double r, double, double du) {
    return std::pow(r, sol.N - 1.0) * du * du;
  });
  double pot = radial_integral(sol, [&](double r, double u, double) {
    return std::pow(r, sol.N - 1.0) * std::pow(u, sol.p);
  });
  CHECK(kin > 0.0);
  CHECK(kin == doctest::Approx(pot).epsilon(1e-6));
}

TEST_CASE("shooting respects a radial coefficient") {
  // Same five-point residual check with a nonconstant a(r).
  auto sol = shoot_radial(4, 1.0, 3.0, 4.0,
                          [](double r) { return std::pow(r, -4.0); });
  const int n = static_cast<int>(sol.r.size());
  const double h = (sol.R2 - sol.R1) / (n - 1);
  double worst = 0.0, scale = 0.0;
  for (int i = 2; i + 2 < n; i += 16) {
    double upp = (-sol.u[i - 2] + 16 * sol.u[i - 1] - 30 * sol.u[i] +
                  16 * sol.u[i + 1] - sol.u[i + 2]) /
                 (12 * h * h);
    double rhs = std::pow(sol.r[i], -4.0) * std::pow(sol.u[i], 3.0);
    double res = upp + 3.0 * sol.du[i] / sol.r[i] + rhs;
    worst = std::max(worst, std::abs(res));
    scale = std::max(scale, std::abs(rhs));
  }
  CHECK(worst <= 1e-5 * std::max(1.0, scale));
}

TEST_CASE("shooting validates its input") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(shoot_radial(1, 1.0, 2.0, 4.0, one), std::invalid_argument);
  CHECK_THROWS_AS(shoot_radial(3, 2.0, 1.0, 4.0, one), std::invalid_argument);
  CHECK_THROWS_AS(shoot_radial(3, 1.0, 2.0, 2.0, one), std::invalid_argument);
  ShootOptions bad;
  bad.n_steps = 63;
  CHECK_THROWS_AS(shoot_radial(3, 1.0, 2.0, 4.0, one, bad),
                  std::invalid_argument);
}
