#include "drev/cone.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace drev {

ConeDiagnostics cone_check(const Field& u) {
  const Grid& g = u.grid();
  ConeDiagnostics d;
  d.min_value = std::min(0.0, u.min_value());
  for (int i = 1; i < g.n_rho(); ++i)
    for (int j = 0; j + 1 < g.n_theta(); ++j) {
      double inc = u.interior(i, j + 1) - u.interior(i, j);
      d.max_increase = std::max(d.max_increase, inc);
    }
  d.max_theta_slope = d.max_increase / g.dtheta();
  d.tol = 1e-12 * std::max(1.0, u.max_abs());
  d.member = (d.min_value >= -d.tol) && (d.max_increase <= d.tol);
  return d;
}

namespace {

struct Block {
  double sum_wx = 0.0;
  double sum_w = 0.0;
  int count = 0;
  double mean() const { return sum_wx / sum_w; }
};

// Weighted antitone regression along one line: minimizes
// sum w_j (x_j - u_j)^2 subject to x_0 >= x_1 >= ... >= x_{J-1}.
void antitone_line(const double* u, const double* w, int J, double* x) {
  std::vector<Block> stack;
  stack.reserve(J);
  for (int j = 0; j < J; ++j) {
    Block b{w[j] * u[j], w[j], 1};
    while (!stack.empty() && stack.back().mean() < b.mean()) {
      b.sum_wx += stack.back().sum_wx;
      b.sum_w += stack.back().sum_w;
      b.count += stack.back().count;
      stack.pop_back();
    }
    stack.push_back(b);
  }
  int j = 0;
  for (const Block& b : stack) {
    double m = b.mean();
    for (int k = 0; k < b.count; ++k) x[j++] = m;
  }
}

}  // namespace

Field cone_project(const Field& u) {
  const Grid& g = u.grid();
  const int J = g.n_theta();
  Field out(u.grid_ptr());
  std::vector<double> w(J);
  for (int i = 1; i < g.n_rho(); ++i) {
    for (int j = 0; j < J; ++j) w[j] = g.cell_measure(i, j);
    antitone_line(u.data() + g.index(i, 0), w.data(), J,
                  out.data() + g.index(i, 0));
  }
  for (double& v : out.values()) v = std::max(v, 0.0);
  return out;
}

Field random_cone_field(std::shared_ptr<const Grid> grid, unsigned seed) {
  const Grid& g = *grid;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Field out(grid);
  constexpr double pi = 3.14159265358979323846;
  for (int i = 1; i < g.n_rho(); ++i) {
    double amp = (0.5 + unif(rng)) * std::sin(pi * g.rho(i));
    double acc = 0.0;
    for (int j = g.n_theta() - 1; j >= 0; --j) {
      acc += unif(rng);
      out.interior(i, j) = amp * acc;
    }
  }
  double m = out.max_abs();
  if (m > 0.0)
    for (double& v : out.values()) v /= m;
  return out;
}

}  // namespace drev
