#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "drev/cone.hpp"

using namespace drev;

namespace {

std::shared_ptr<const Grid> small_grid(int n_theta = 12, int n_rho = 6) {
  return make_grid(Decomposition(2, 1), DomainProfile::annulus(1.0, 2.0),
                   n_theta, n_rho);
}

Field random_field(std::shared_ptr<const Grid> grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field u(grid);
  for (double& v : u.values()) v = dist(rng);
  return u;
}

double mu_dot(const Field& x, const Field& y) {
  const Grid& g = x.grid();
  double acc = 0.0;
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j < g.n_theta(); ++j)
      acc += g.cell_measure(i, j) * x.interior(i, j) * y.interior(i, j);
  return acc;
}

Field minus(const Field& x, const Field& y) {
  Field d = x;
  for (int k = 0; k < d.size(); ++k) d.data()[k] -= y.data()[k];
  return d;
}

double sup_diff(const Field& x, const Field& y) {
  double worst = 0.0;
  for (int k = 0; k < x.size(); ++k)
    worst = std::max(worst, std::abs(x.data()[k] - y.data()[k]));
  return worst;
}

// Closed-form weighted antitone regression by the minimax rule: reverse the
// line, take v_i = max over starts a <= i of the min over ends b >= i of the
// weighted mean, reverse back, then clamp at zero. Cubic cost, used as an
// independent oracle on short lines.
std::vector<double> minimax_antitone(const std::vector<double>& u,
                                     const std::vector<double>& w) {
  int n = static_cast<int>(u.size());
  std::vector<double> ur(u.rbegin(), u.rend()), wr(w.rbegin(), w.rend());
  std::vector<double> vr(n);
  for (int i = 0; i < n; ++i) {
    double best = -1e300;
    for (int a = 0; a <= i; ++a) {
      double worst = 1e300;
      double num = 0.0, den = 0.0;
      for (int b = a; b < n; ++b) {
        num += wr[b] * ur[b];
        den += wr[b];
        if (b >= i) worst = std::min(worst, num / den);
      }
      best = std::max(best, worst);
    }
    vr[i] = std::max(best, 0.0);
  }
  return std::vector<double>(vr.rbegin(), vr.rend());
}

}  // namespace

TEST_CASE("cone check flags increases and negative values") {
  auto grid = small_grid();
  Field up = sample_field(grid, [](double theta, double) { return theta; });
  auto d1 = cone_check(up);
  CHECK(!d1.member);
  CHECK(d1.max_theta_slope == doctest::Approx(1.0).epsilon(0.1));

  Field ok = sample_field(grid, [](double theta, double r) {
    return (2.0 - theta) * (r - 1.0) * (2.0 - r);
  });
  auto d2 = cone_check(ok);
  CHECK(d2.member);
  CHECK(d2.min_value >= 0.0);
  CHECK(d2.max_increase <= d2.tol);

  Field neg = ok;
  neg.interior(2, 3) = -1.0;
  CHECK(!cone_check(neg).member);
  CHECK(cone_check(neg).min_value == doctest::Approx(-1.0));
}

TEST_CASE("random cone fields are members with unit sup norm") {
  auto grid = small_grid(20, 10);
  for (unsigned seed : {1u, 7u, 42u}) {
    Field k = random_cone_field(grid, seed);
    CHECK(cone_check(k).member);
    CHECK(k.max_abs() == doctest::Approx(1.0));
  }
  Field a = random_cone_field(grid, 5);
  Field b = random_cone_field(grid, 5);
  Field c = random_cone_field(grid, 6);
  CHECK(sup_diff(a, b) == 0.0);
  CHECK(sup_diff(a, c) > 1e-3);
}

TEST_CASE("projection lands in the cone and is idempotent") {
  auto grid = small_grid(16, 8);
  for (unsigned seed : {3u, 17u, 23u}) {
    Field u = random_field(grid, seed);
    Field Pu = cone_project(u);
    CHECK(cone_check(Pu).member);
    CHECK(sup_diff(cone_project(Pu), Pu) <= 1e-13);
  }
}

TEST_CASE("projection fixes cone members") {
  auto grid = small_grid(16, 8);
  Field k = random_cone_field(grid, 9);
  CHECK(sup_diff(cone_project(k), k) <= 1e-14);
}

TEST_CASE("projection satisfies the variational inequality") {
  // Pu is the closest cone point in the lumped-measure metric, so u - Pu
  // must make a nonpositive inner product with every cone member, and must
  // be orthogonal to Pu itself (the cone is scale invariant).
  auto grid = small_grid(14, 9);
  for (unsigned seed : {2u, 11u, 31u}) {
    Field u = random_field(grid, seed);
    Field Pu = cone_project(u);
    Field res = minus(u, Pu);
    double scale = mu_dot(u, u) + 1.0;
    CHECK(std::abs(mu_dot(res, Pu)) <= 1e-12 * scale);
    for (unsigned ws = 0; ws < 40; ++ws) {
      Field w = random_cone_field(grid, 1000 * seed + ws);
      CHECK(mu_dot(res, w) <= 1e-12 * scale);
    }
    // Distance minimality against sampled cone members.
    double dist = mu_dot(res, res);
    for (unsigned ws = 0; ws < 10; ++ws) {
      Field w = random_cone_field(grid, 77 * seed + ws);
      Field d = minus(u, w);
      CHECK(dist <= mu_dot(d, d) + 1e-12 * scale);
    }
  }
}

TEST_CASE("projection matches the cubic-cost minimax oracle") {
  // Each constant-rho line is an independent weighted antitone regression
  // with that line's lumped measures as weights.
  auto grid = small_grid(9, 4);
  for (unsigned seed : {4u, 13u, 29u, 57u}) {
    Field u = random_field(grid, seed);
    Field Pu = cone_project(u);
    for (int i = 1; i < grid->n_rho(); ++i) {
      std::vector<double> line(9), weights(9);
      for (int j = 0; j < 9; ++j) {
        line[j] = u.interior(i, j);
        weights[j] = grid->cell_measure(i, j);
      }
      auto expect = minimax_antitone(line, weights);
      for (int j = 0; j < 9; ++j)
        CHECK(Pu.interior(i, j) == doctest::Approx(expect[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection acts line by line") {
  // Projecting a field that already satisfies the constraints on some lines
  // must leave those lines untouched.
  auto grid = small_grid(10, 5);
  Field u(grid);
  for (int j = 0; j < 10; ++j) {
    u.interior(1, j) = 1.0 - 0.05 * j;            // already antitone
    u.interior(2, j) = (j % 2) ? 1.0 : -1.0;      // oscillating
    u.interior(3, j) = -1.0 - 0.1 * j;            // negative, antitone
    u.interior(4, j) = std::sin(0.9 * j);
  }
  Field Pu = cone_project(u);
  for (int j = 0; j < 10; ++j) {
    CHECK(Pu.interior(1, j) ==
          doctest::Approx(u.interior(1, j)).epsilon(1e-14));
    CHECK(Pu.interior(3, j) == 0.0);  // clamp kills a fully negative line
  }
}
