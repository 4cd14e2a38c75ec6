#include "drev/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drev {

namespace {
constexpr double kPi = 3.14159265358979323846;

double central_diff(const DomainProfile::Fn& f, double x, double lo, double hi) {
  double h = 1e-6 * (hi - lo);
  double a = std::max(lo, x - h);
  double b = std::min(hi, x + h);
  return (f(b) - f(a)) / (b - a);
}
}  // namespace

Decomposition::Decomposition(int m_, int n_) : m(m_), n(n_) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("decomposition factors must satisfy m,n >= 1");
}

DomainProfile DomainProfile::annulus(double R1, double R2) {
  if (!(0.0 < R1 && R1 < R2))
    throw std::invalid_argument("annulus requires 0 < R1 < R2");
  DomainProfile p;
  p.kind_ = ProfileKind::Annular;
  p.theta_max_ = kPi / 2.0;
  p.g1_ = [R1](double) { return R1; };
  p.g2_ = [R2](double) { return R2; };
  p.dg1_ = [](double) { return 0.0; };
  p.dg2_ = [](double) { return 0.0; };
  p.label_ = "annulus";
  return p;
}

DomainProfile DomainProfile::ellipsoidal(double a, double b, double c, double d) {
  if (!(a > 0 && b > 0 && c > 0 && d > 0))
    throw std::invalid_argument("ellipsoidal semi-axes must be positive");
  if (!(c < a && d < b))
    throw std::invalid_argument("inner ellipsoid must lie inside the outer one");
  // Level set s^2/A^2 + t^2/B^2 = 1 in polar form: r(theta) = (P + Q sin^2 theta)^{-1/2}
  // with P = 1/A^2, Q = 1/B^2 - 1/A^2.
  auto radius = [](double P, double Q) {
    return [P, Q](double th) {
      double s = std::sin(th);
      return 1.0 / std::sqrt(P + Q * s * s);
    };
  };
  auto dradius = [](double P, double Q) {
    return [P, Q](double th) {
      double s = std::sin(th);
      double g = 1.0 / std::sqrt(P + Q * s * s);
      return -0.5 * Q * g * g * g * std::sin(2.0 * th);
    };
  };
  double Pi_ = 1.0 / (c * c), Qi = 1.0 / (d * d) - 1.0 / (c * c);
  double Po = 1.0 / (a * a), Qo = 1.0 / (b * b) - 1.0 / (a * a);
  DomainProfile p;
  p.kind_ = ProfileKind::Annular;
  p.theta_max_ = kPi / 2.0;
  p.g1_ = radius(Pi_, Qi);
  p.g2_ = radius(Po, Qo);
  p.dg1_ = dradius(Pi_, Qi);
  p.dg2_ = dradius(Po, Qo);
  p.label_ = "ellipsoidal";
  return p;
}

DomainProfile DomainProfile::torus(double a_major, double b_minor) {
  if (!(0.0 < b_minor && b_minor < a_major))
    throw std::invalid_argument("torus requires 0 < b_minor < a_major");
  double theta0 = std::asin(b_minor / a_major);
  double A = a_major, B = b_minor;
  auto root = [A, B](double th) {
    double s = A * std::sin(th);
    double q = B * B - s * s;
    return std::sqrt(std::max(q, 0.0));
  };
  DomainProfile p;
  p.kind_ = ProfileKind::Toroidal;
  p.theta_max_ = theta0;
  p.g1_ = [A, root](double th) { return A * std::cos(th) - root(th); };
  p.g2_ = [A, root](double th) { return A * std::cos(th) + root(th); };
  // d/dth [A cos th -+ sqrt(B^2 - A^2 sin^2 th)]
  p.dg1_ = [A, root](double th) {
    double rt = root(th);
    double corr = (rt > 0.0) ? A * A * std::sin(th) * std::cos(th) / rt
                             : std::numeric_limits<double>::infinity();
    return -A * std::sin(th) + corr;
  };
  p.dg2_ = [A, root](double th) {
    double rt = root(th);
    double corr = (rt > 0.0) ? A * A * std::sin(th) * std::cos(th) / rt
                             : -std::numeric_limits<double>::infinity();
    return -A * std::sin(th) - corr;
  };
  p.label_ = "torus";
  return p;
}

DomainProfile DomainProfile::custom(ProfileKind kind, double theta_max, Fn g1,
                                    Fn g2, Fn dg1, Fn dg2, std::string label) {
  if (!(theta_max > 0.0 && theta_max <= kPi / 2.0 + 1e-12))
    throw std::invalid_argument("theta_max must lie in (0, pi/2]");
  if (!g1 || !g2) throw std::invalid_argument("both boundary curves required");
  DomainProfile p;
  p.kind_ = kind;
  p.theta_max_ = theta_max;
  p.g1_ = std::move(g1);
  p.g2_ = std::move(g2);
  p.dg1_ = std::move(dg1);
  p.dg2_ = std::move(dg2);
  p.label_ = std::move(label);
  return p;
}

double DomainProfile::dg1(double theta) const {
  if (dg1_) return dg1_(theta);
  return central_diff(g1_, theta, 0.0, theta_max_);
}

double DomainProfile::dg2(double theta) const {
  if (dg2_) return dg2_(theta);
  return central_diff(g2_, theta, 0.0, theta_max_);
}

bool DomainProfile::monotone(int samples) const {
  double prev1 = g1_(0.0), prev2 = g2_(0.0);
  double tol = 1e-12 * (1.0 + std::abs(prev2));
  for (int k = 1; k <= samples; ++k) {
    double th = theta_max_ * k / samples;
    double v1 = g1_(th), v2 = g2_(th);
    if (v1 < prev1 - tol) return false;
    if (v2 > prev2 + tol) return false;
    prev1 = v1;
    prev2 = v2;
  }
  return true;
}

double DomainProfile::r_min() const {
  double lo = std::numeric_limits<double>::infinity();
  const int samples = 1024;
  for (int k = 0; k <= samples; ++k)
    lo = std::min(lo, g1_(theta_max_ * k / samples));
  return lo;
}

double DomainProfile::r_max() const {
  double hi = 0.0;
  const int samples = 1024;
  for (int k = 0; k <= samples; ++k)
    hi = std::max(hi, g2_(theta_max_ * k / samples));
  return hi;
}

Coefficient Coefficient::constant(double value) {
  if (!(value >= 0.0))
    throw std::invalid_argument("constant coefficient must be >= 0");
  Coefficient c;
  c.value_ = [value](double, double) { return value; };
  c.grad_s_ = [](double, double) { return 0.0; };
  c.grad_t_ = [](double, double) { return 0.0; };
  c.label_ = "constant";
  c.monotone_known_ = Known::Yes;
  return c;
}

Coefficient Coefficient::radial_power(double alpha) {
  if (!(alpha >= 0.0))
    throw std::invalid_argument("radial power exponent must be >= 0");
  Coefficient c;
  c.value_ = [alpha](double s, double t) {
    return std::pow(s * s + t * t, alpha / 2.0);
  };
  c.grad_s_ = [alpha](double s, double t) {
    double r2 = s * s + t * t;
    return alpha * s * std::pow(r2, alpha / 2.0 - 1.0);
  };
  c.grad_t_ = [alpha](double s, double t) {
    double r2 = s * s + t * t;
    return alpha * t * std::pow(r2, alpha / 2.0 - 1.0);
  };
  c.label_ = "radial_power";
  // s a_t - t a_s = 0 identically for radial coefficients.
  c.monotone_known_ = Known::Yes;
  return c;
}

Coefficient Coefficient::s_profile(std::function<double(double)> h,
                                   std::string label) {
  if (!h) throw std::invalid_argument("profile function required");
  Coefficient c;
  c.value_ = [h](double s, double) { return h(s); };
  c.label_ = std::move(label);
  // s a_t - t a_s = -t h'(s) <= 0 when h is nondecreasing; verified
  // numerically by check_coefficient since h' is not available here.
  c.monotone_known_ = Known::Unknown;
  return c;
}

Coefficient Coefficient::radial(std::function<double(double)> h,
                                std::string label) {
  if (!h) throw std::invalid_argument("profile function required");
  Coefficient c;
  c.value_ = [h](double s, double t) { return h(std::hypot(s, t)); };
  auto dh = [h](double r) {
    double step = 1e-6 * (1.0 + r);
    return (h(r + step) - h(r - step)) / (2.0 * step);
  };
  c.grad_s_ = [h, dh](double s, double t) {
    double r = std::hypot(s, t);
    return r > 0.0 ? dh(r) * s / r : 0.0;
  };
  c.grad_t_ = [h, dh](double s, double t) {
    double r = std::hypot(s, t);
    return r > 0.0 ? dh(r) * t / r : 0.0;
  };
  c.label_ = std::move(label);
  c.monotone_known_ = Known::Yes;
  return c;
}

Coefficient Coefficient::custom(Fn2 value, Fn2 grad_s, Fn2 grad_t,
                                std::string label) {
  if (!value) throw std::invalid_argument("coefficient function required");
  if (static_cast<bool>(grad_s) != static_cast<bool>(grad_t))
    throw std::invalid_argument("supply both gradient components or neither");
  Coefficient c;
  c.value_ = std::move(value);
  c.grad_s_ = std::move(grad_s);
  c.grad_t_ = std::move(grad_t);
  c.label_ = std::move(label);
  return c;
}

double Coefficient::grad_s(double s, double t) const {
  if (grad_s_) return grad_s_(s, t);
  double h = 1e-6 * (1.0 + std::abs(s));
  return (value_(s + h, t) - value_(s - h, t)) / (2.0 * h);
}

double Coefficient::grad_t(double s, double t) const {
  if (grad_t_) return grad_t_(s, t);
  double h = 1e-6 * (1.0 + std::abs(t));
  return (value_(s, t + h) - value_(s, t - h)) / (2.0 * h);
}

CoefficientCheck check_coefficient(const Coefficient& a,
                                   const DomainProfile& profile, int samples) {
  CoefficientCheck out;
  out.min_value = std::numeric_limits<double>::infinity();
  double max_grad = 0.0;
  double max_expr = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= samples; ++j) {
    double th = profile.theta_max() * j / samples;
    double r1 = profile.g1(th), r2 = profile.g2(th);
    for (int i = 0; i <= samples; ++i) {
      double r = r1 + (r2 - r1) * i / samples;
      double s = r * std::cos(th), t = r * std::sin(th);
      double v = a(s, t);
      out.min_value = std::min(out.min_value, v);
      double as = a.grad_s(s, t), at = a.grad_t(s, t);
      max_grad = std::max(max_grad, std::hypot(as, at));
      max_expr = std::max(max_expr, s * at - t * as);
    }
  }
  out.tolerance = 1e-10 * (1.0 + max_grad);
  out.nonnegative = out.min_value >= -out.tolerance;
  out.max_violation = std::max(0.0, max_expr);
  out.monotone = a.monotone_known() == Coefficient::Known::Yes ||
                 max_expr <= out.tolerance;
  return out;
}

}  // namespace drev
