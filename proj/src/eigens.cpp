#include "drev/eigens.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace drev {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Thomas algorithm for a symmetric tridiagonal system with diagonal d and
// off-diagonal e (e[k] couples rows k and k+1). Destroys nothing; returns x.
std::vector<double> solve_tridiag(const std::vector<double>& d,
                                  const std::vector<double>& e,
                                  std::vector<double> b) {
  const int n = static_cast<int>(d.size());
  std::vector<double> c(n, 0.0);
  double piv = d[0];
  if (piv <= 0.0) throw std::runtime_error("tridiagonal pivot failure");
  c[0] = n > 1 ? e[0] / piv : 0.0;
  b[0] /= piv;
  for (int k = 1; k < n; ++k) {
    piv = d[k] - e[k - 1] * c[k - 1];
    if (piv <= 0.0) throw std::runtime_error("tridiagonal pivot failure");
    if (k < n - 1) c[k] = e[k] / piv;
    b[k] = (b[k] - e[k - 1] * b[k - 1]) / piv;
  }
  for (int k = n - 2; k >= 0; --k) b[k] -= c[k] * b[k + 1];
  return b;
}

struct Pencil {
  // A x = sum over faces, M diagonal. Stored as symmetric tridiagonal A
  // (diag, off) plus mass diag.
  std::vector<double> a_diag, a_off, mass;

  int size() const { return static_cast<int>(a_diag.size()); }

  std::vector<double> apply_A(const std::vector<double>& x) const {
    const int n = size();
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) {
      double v = a_diag[k] * x[k];
      if (k > 0) v += a_off[k - 1] * x[k - 1];
      if (k < n - 1) v += a_off[k] * x[k + 1];
      y[k] = v;
    }
    return y;
  }

  double rayleigh(const std::vector<double>& x) const {
    auto ax = apply_A(x);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < size(); ++k) {
      num += x[k] * ax[k];
      den += mass[k] * x[k] * x[k];
    }
    return num / den;
  }
};

// Inverse iteration on (A + shift M) x = M v for the smallest eigenvalue of
// A x = mu M x after projecting out the span of `deflate` in the M inner
// product (pass empty to keep the full spectrum).
struct EigenIterResult {
  double value = 0.0;
  std::vector<double> vec;
  int iterations = 0;
};

EigenIterResult smallest_eigenpair(const Pencil& p, double shift,
                                   const std::vector<double>& deflate,
                                   int max_iter = 2000, double tol = 1e-13) {
  const int n = p.size();
  std::vector<double> d(n), v(n);
  for (int k = 0; k < n; ++k) d[k] = p.a_diag[k] + shift * p.mass[k];

  double defl_mm = 0.0;
  if (!deflate.empty())
    for (int k = 0; k < n; ++k) defl_mm += p.mass[k] * deflate[k] * deflate[k];
  auto project = [&](std::vector<double>& x) {
    if (deflate.empty()) return;
    double c = 0.0;
    for (int k = 0; k < n; ++k) c += p.mass[k] * x[k] * deflate[k];
    c /= defl_mm;
    for (int k = 0; k < n; ++k) x[k] -= c * deflate[k];
  };

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& x : v) x = unif(rng);
  project(v);

  double mu_prev = 0.0;
  std::vector<double> window;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<double> rhs(n);
    for (int k = 0; k < n; ++k) rhs[k] = p.mass[k] * v[k];
    v = solve_tridiag(d, p.a_off, std::move(rhs));
    project(v);
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += p.mass[k] * v[k] * v[k];
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw std::runtime_error("eigensolver lost the iterate");
    for (auto& x : v) x /= norm;
    double mu = p.rayleigh(v);
    if (it > 3 && std::abs(mu - mu_prev) <= tol * (1.0 + std::abs(mu)))
      return {mu, std::move(v), it};
    // the Rayleigh quotient bottoms out at rounding noise proportional to
    // mu; treat a flat recent history as converged
    window.push_back(mu);
    if (window.size() > 6) window.erase(window.begin());
    if (it > 20 && window.size() == 6) {
      auto [lo, hi] = std::minmax_element(window.begin(), window.end());
      if (*hi - *lo <= 1e-11 * (1.0 + std::abs(mu)))
        return {mu, std::move(v), it};
    }
    mu_prev = mu;
  }
  throw std::runtime_error("eigensolver did not converge");
}

void normalize_max_abs(std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m > 0.0)
    for (auto& v : x) v /= m;
}

}  // namespace

AngularResult angular_eigenpair(Decomposition decomp, int n_theta) {
  if (n_theta < 16)
    throw std::invalid_argument("angular eigensolver requires n_theta >= 16");
  const int K = n_theta;
  const double h = (kPi / 2.0) / K;
  auto omega = [&](double th) {
    return std::pow(std::cos(th), decomp.m - 1) *
           std::pow(std::sin(th), decomp.n - 1);
  };

  Pencil p;
  p.a_diag.assign(K, 0.0);
  p.a_off.assign(K - 1, 0.0);
  p.mass.resize(K);
  for (int j = 0; j < K; ++j) p.mass[j] = omega((j + 0.5) * h) * h;
  for (int jf = 1; jf < K; ++jf) {
    double k = omega(jf * h) / h;  // faces at theta = jf h; ends carry none
    p.a_diag[jf - 1] += k;
    p.a_diag[jf] += k;
    p.a_off[jf - 1] -= k;
  }

  std::vector<double> ones(K, 1.0);
  auto pair = smallest_eigenpair(p, 1.0, ones);

  AngularResult out;
  out.decomp = decomp;
  out.n_theta = K;
  out.mu0 = p.rayleigh(ones);  // zero to rounding by construction
  out.mu1 = pair.value;
  out.iterations = pair.iterations;
  out.theta.resize(K);
  for (int j = 0; j < K; ++j) out.theta[j] = (j + 0.5) * h;
  out.psi1 = std::move(pair.vec);
  if (out.psi1.front() < out.psi1.back())
    for (auto& v : out.psi1) v = -v;
  normalize_max_abs(out.psi1);
  auto a_psi = p.apply_A(out.psi1);
  for (int j = 0; j < K; ++j) {
    out.psi1_dirichlet += out.psi1[j] * a_psi[j];
    out.psi1_mass += p.mass[j] * out.psi1[j] * out.psi1[j];
  }
  return out;
}

HardyResult hardy_smallest(int N, double R1, double R2, int n_r) {
  if (N < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(0.0 < R1 && R1 < R2))
    throw std::invalid_argument("annulus requires 0 < R1 < R2");
  if (n_r < 32)
    throw std::invalid_argument("radial eigensolver requires n_r >= 32");
  const int K = n_r;
  const double h = (R2 - R1) / K;

  Pencil p;
  p.a_diag.assign(K - 1, 0.0);
  p.a_off.assign(K - 2, 0.0);
  p.mass.resize(K - 1);
  for (int i = 1; i < K; ++i) {
    double r = R1 + i * h;
    p.mass[i - 1] = std::pow(r, N - 3) * h;
  }
  for (int f = 0; f < K; ++f) {
    double rf = R1 + (f + 0.5) * h;
    double k = std::pow(rf, N - 1) / h;
    if (f >= 1) p.a_diag[f - 1] += k;
    if (f + 1 <= K - 1) p.a_diag[f] += k;
    if (f >= 1 && f + 1 <= K - 1) p.a_off[f - 1] -= k;
  }

  auto pair = smallest_eigenpair(p, 0.0, {});

  HardyResult out;
  out.N = N;
  out.R1 = R1;
  out.R2 = R2;
  out.n_r = K;
  out.lambda1 = pair.value;
  out.iterations = pair.iterations;
  out.r.resize(K + 1);
  for (int i = 0; i <= K; ++i) out.r[i] = R1 + i * h;
  out.w.assign(K + 1, 0.0);
  for (int i = 1; i < K; ++i) out.w[i] = pair.vec[i - 1];
  if (out.w[K / 2] < 0.0)
    for (auto& v : out.w) v = -v;
  normalize_max_abs(out.w);
  return out;
}

std::vector<ThinAnnulusEntry> thin_annulus_sweep(
    int N, const std::vector<double>& R_values,
    const std::function<double(double)>& gamma, int n_r) {
  std::vector<ThinAnnulusEntry> out;
  out.reserve(R_values.size());
  for (double R : R_values) {
    double R2 = gamma(R);
    if (!(R2 > R))
      throw std::invalid_argument("gamma(R) must exceed R in the sweep");
    auto h = hardy_smallest(N, R, R2, n_r);
    ThinAnnulusEntry e;
    e.R = R;
    e.R2 = R2;
    e.lambda = h.lambda1;
    e.ratio = h.lambda1 / (R * R);
    e.deviation = std::abs(e.ratio - kPi * kPi);
    out.push_back(e);
  }
  return out;
}

}  // namespace drev
