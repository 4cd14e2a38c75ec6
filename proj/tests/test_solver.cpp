#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drev/solver.hpp"

using namespace drev;

namespace {

ProblemSpec annulus_problem(double p = 4.0) {
  return make_problem(Decomposition(1, 1), DomainProfile::annulus(1.0, 2.0),
                      Coefficient::constant(1.0), p);
}

}  // namespace

TEST_CASE("problem validation rejects bad data") {
  auto prof = DomainProfile::annulus(1.0, 2.0);
  CHECK_THROWS_AS(make_problem(Decomposition(1, 1), prof,
                               Coefficient::constant(1.0), 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_problem(Decomposition(1, 1), prof,
                               Coefficient::constant(-0.5), 4.0),
                  std::invalid_argument);
  // a = t increases along circles toward the second axis: the slanted
  // derivative s a_t - t a_s = s is positive, so the problem is rejected.
  auto bad = Coefficient::custom([](double, double t) { return t + 1.0; },
                                 [](double, double) { return 0.0; },
                                 [](double, double) { return 1.0; }, "t+1");
  CHECK_THROWS_AS(make_problem(Decomposition(2, 1), prof, bad, 4.0),
                  std::invalid_argument);
}

TEST_CASE("problem records the proven existence window") {
  auto prof = DomainProfile::annulus(1.0, 2.0);
  auto one = Coefficient::constant(1.0);
  // n = 1: every p > 2 is covered.
  CHECK(!make_problem(Decomposition(3, 1), prof, one, 12.0)
             .outside_proven_range);
  // n = 3: the window closes at 2(n+1)/(n-1) = 4.
  CHECK(!make_problem(Decomposition(1, 3), prof, one, 3.9)
             .outside_proven_range);
  CHECK(make_problem(Decomposition(1, 3), prof, one, 4.0)
            .outside_proven_range);
  CHECK(make_problem(Decomposition(1, 3), prof, one, 9.0)
            .outside_proven_range);
}

TEST_CASE("nehari rescaling balances the energy terms") {
  DiscreteProblem prob(annulus_problem(), 24, 24);
  Field u = random_cone_field(prob.grid_ptr(), 3);
  double alpha = prob.nehari_scale(u);
  CHECK(alpha > 0.0);
  for (double& v : u.values()) v *= alpha;
  Energy e = prob.energy(u);
  CHECK(e.dirichlet == doctest::Approx(e.nonlinear).epsilon(1e-12));
  CHECK(e.total == doctest::Approx((0.5 - 0.25) * e.dirichlet).epsilon(1e-12));
}

TEST_CASE("ground state on the planar annulus") {
  DiscreteProblem prob(annulus_problem(), 48, 48);
  Field init = random_cone_field(prob.grid_ptr(), 1);
  auto rep = prob.solve_ground_state(init);
  REQUIRE(rep.converged);
  CHECK(rep.message == "converged");
  CHECK(rep.el_residual <= 1e-8);
  CHECK(rep.cone.member);
  CHECK(rep.u.min_value() >= 0.0);
  CHECK(rep.u.max_abs() > 0.1);
  CHECK(rep.energy.total > 0.0);
  CHECK(rep.energy.dirichlet ==
        doctest::Approx(rep.energy.nonlinear).epsilon(1e-10));

  // Independent residual: the fixed point solves L u = a u^{p-1} nodewise.
  Field rhs = prob.nonlinear_rhs(rep.u);
  Field Lu = prob.op().apply(rep.u);
  double num = 0.0, den = 0.0;
  const auto& M = prob.op().mass();
  for (int k = 0; k < Lu.size(); ++k) {
    double d = Lu.data()[k] - rhs.data()[k];
    num += M[k] * d * d;
    den += M[k] * rhs.data()[k] * rhs.data()[k];
  }
  CHECK(std::sqrt(num / den) <= 2e-8);
}

TEST_CASE("ground state is independent of the cone initializer") {
  DiscreteProblem prob(annulus_problem(), 32, 32);
  auto r1 = prob.solve_ground_state(random_cone_field(prob.grid_ptr(), 2));
  auto r2 = prob.solve_ground_state(random_cone_field(prob.grid_ptr(), 99));
  REQUIRE(r1.converged);
  REQUIRE(r2.converged);
  CHECK(r1.energy.total == doctest::Approx(r2.energy.total).epsilon(1e-6));
  double worst = 0.0;
  for (int k = 0; k < r1.u.size(); ++k)
    worst = std::max(worst, std::abs(r1.u.data()[k] - r2.u.data()[k]));
  CHECK(worst <= 1e-5 * r1.u.max_abs());
}

TEST_CASE("ground state on a toroidal section") {
  // The boundary slope blows up at the closing face; the solve must still
  // reach a genuine solution, in the cone or with the projection released.
  auto spec = make_problem(Decomposition(1, 2), DomainProfile::torus(2.0, 1.0),
                           Coefficient::constant(1.0), 3.5);
  DiscreteProblem prob(spec, 32, 32);
  auto rep = prob.solve_ground_state(random_cone_field(prob.grid_ptr(), 7));
  REQUIRE(rep.converged);
  CHECK(rep.el_residual <= 1e-8);
  CHECK(rep.energy.total > 0.0);
  CHECK((rep.cone.member || rep.projection_released));
  CHECK(rep.cone.max_theta_slope <= 0.1 * rep.u.max_abs());
  CHECK(rep.u.min_value() >= -1e-6 * rep.u.max_abs());
}

TEST_CASE("zero initializer is reported, not thrown") {
  DiscreteProblem prob(annulus_problem(), 16, 16);
  Field zero(prob.grid_ptr());
  auto rep = prob.solve_ground_state(zero);
  CHECK(!rep.converged);
  CHECK(rep.message == "initializer collapsed");
}

TEST_CASE("monitor sees every iteration") {
  DiscreteProblem prob(annulus_problem(), 24, 24);
  SolveOptions opts;
  int calls = 0;
  double last_res = -1.0;
  opts.monitor = [&](int it, double res, double energy) {
    ++calls;
    CHECK(it == calls);
    CHECK(std::isfinite(res));
    CHECK(std::isfinite(energy));
    last_res = res;
  };
  auto rep = prob.solve_ground_state(random_cone_field(prob.grid_ptr(), 4),
                                     opts);
  REQUIRE(rep.converged);
  CHECK(calls == rep.iterations);
  CHECK(last_res == doctest::Approx(rep.el_residual));
}

TEST_CASE("invariance certificate on a monotone ellipsoidal domain") {
  auto spec = make_problem(Decomposition(2, 1),
                           DomainProfile::ellipsoidal(3.0, 2.0, 0.8, 1.0),
                           Coefficient::radial_power(1.0), 4.0);
  CHECK(spec.profile_monotone);
  DiscreteProblem prob(spec, 40, 24);
  for (unsigned seed : {1u, 12u, 30u}) {
    Field u = random_cone_field(prob.grid_ptr(), seed);
    auto cert = prob.certify_invariance(u);
    CHECK(cert.cone_of_image.member);
    CHECK(cert.v.min_value() >= 0.0);
    CHECK(cert.gap >= 0.0);
    CHECK(std::isfinite(cert.gap));
  }
}

TEST_CASE("solver reports energies consistent with the quadrature") {
  DiscreteProblem prob(annulus_problem(), 24, 24);
  Field u = random_cone_field(prob.grid_ptr(), 8);
  Energy e = prob.energy(u);
  // The nonlinear term is a plain weighted sum; recompute it directly.
  double phi = 0.0;
  const Grid& g = prob.grid();
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      phi += g.cell_measure(i, j) * std::pow(std::max(u.interior(i, j), 0.0),
                                             4.0);
  CHECK(e.nonlinear == doctest::Approx(phi).epsilon(1e-12));
  CHECK(e.dirichlet == doctest::Approx(prob.op().dirichlet_form(u, u))
                           .epsilon(1e-12));
  CHECK(e.total == doctest::Approx(0.5 * e.dirichlet - 0.25 * e.nonlinear));
}
