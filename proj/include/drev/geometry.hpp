#ifndef DREV_GEOMETRY_HPP
#define DREV_GEOMETRY_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace drev {

// Factor dimensions of a domain of double revolution in R^N = R^m x R^n.
// The reduced flat domain lives in the (s,t) quarter plane, s = |x_1..x_m|,
// t = |x_{m+1}..x_N|, with the weighted measure dmu = s^{m-1} t^{n-1} ds dt.
struct Decomposition {
  int m = 1;
  int n = 1;

  Decomposition() = default;
  Decomposition(int m_, int n_);

  int N() const { return m + n; }
  Decomposition swapped() const { return Decomposition(n, m); }
  bool operator==(const Decomposition&) const = default;
};

enum class ProfileKind {
  Annular,   // full angular range [0, pi/2]
  Toroidal,  // angular range [0, theta0], closed section pinching at theta0
};

// Radial section of the reduced domain in polar coordinates
// s = r cos(theta), t = r sin(theta):
//   Omega_hat = { (theta, r) : 0 <= theta <= theta_max, g1(theta) < r < g2(theta) }.
class DomainProfile {
 public:
  using Fn = std::function<double(double)>;

  static DomainProfile annulus(double R1, double R2);
  // Region between two concentric ellipsoid-like level sets
  //   outer: s^2/a^2 + t^2/b^2 = 1,  inner: s^2/c^2 + t^2/d^2 = 1.
  // Requires the inner set strictly inside the outer one.
  static DomainProfile ellipsoidal(double a, double b, double c, double d);
  // Torus-like section: disk of radius b_minor centered at distance a_major
  // from the axis of the second factor. Requires 0 < b_minor < a_major.
  static DomainProfile torus(double a_major, double b_minor);
  // User-supplied boundary curves; derivatives optional (central differences
  // are used when absent).
  static DomainProfile custom(ProfileKind kind, double theta_max, Fn g1, Fn g2,
                              Fn dg1 = nullptr, Fn dg2 = nullptr,
                              std::string label = "custom");

  ProfileKind kind() const { return kind_; }
  double theta_max() const { return theta_max_; }
  const std::string& label() const { return label_; }

  double g1(double theta) const { return g1_(theta); }
  double g2(double theta) const { return g2_(theta); }
  double width(double theta) const { return g2_(theta) - g1_(theta); }
  double dg1(double theta) const;
  double dg2(double theta) const;

  // True when g1 is nondecreasing and g2 is nonincreasing on [0, theta_max]
  // (the shape assumption under which the monotone cone machinery applies).
  // Checked numerically on a uniform sample of the stated density.
  bool monotone(int samples = 512) const;

  // Largest radius over the closure, and a positivity check for g1.
  double r_min() const;
  double r_max() const;

 private:
  DomainProfile() = default;
  ProfileKind kind_ = ProfileKind::Annular;
  double theta_max_ = 0.0;
  Fn g1_, g2_, dg1_, dg2_;
  std::string label_;
};

// Coefficient a(x) of the nonlinearity, evaluated on the reduced plane as
// a(s,t). Nonnegativity and the monotonicity condition
//   s * da/dt - t * da/ds <= 0   on Omega_hat
// (equivalently da/dtheta <= 0 along circles) are checked numerically when a
// profile is supplied; builtin constructors record what is known analytically.
class Coefficient {
 public:
  using Fn2 = std::function<double(double, double)>;

  static Coefficient constant(double value);
  // a(x) = |x|^alpha = (s^2+t^2)^{alpha/2}, alpha >= 0.
  static Coefficient radial_power(double alpha);
  // a(s,t) = h(s) with h nondecreasing; the classical source of examples
  // satisfying the monotonicity condition.
  static Coefficient s_profile(std::function<double(double)> h,
                               std::string label = "s_profile");
  // a(s,t) = h(sqrt(s^2+t^2)); radial coefficients satisfy the monotonicity
  // condition with equality in every decomposition.
  static Coefficient radial(std::function<double(double)> h,
                            std::string label = "radial");
  static Coefficient custom(Fn2 value, Fn2 grad_s = nullptr,
                            Fn2 grad_t = nullptr, std::string label = "custom");

  double operator()(double s, double t) const { return value_(s, t); }
  bool has_gradient() const { return static_cast<bool>(grad_s_); }
  double grad_s(double s, double t) const;
  double grad_t(double s, double t) const;
  const std::string& label() const { return label_; }

  // Analytic knowledge recorded by the builtin constructors; tri-state so a
  // numeric check can fill it in for custom coefficients.
  enum class Known { Yes, No, Unknown };
  Known monotone_known() const { return monotone_known_; }

 private:
  Coefficient() = default;
  Fn2 value_, grad_s_, grad_t_;
  std::string label_;
  Known monotone_known_ = Known::Unknown;
};

struct CoefficientCheck {
  bool nonnegative = false;
  bool monotone = false;       // s a_t - t a_s <= tol everywhere sampled
  double min_value = 0.0;
  double max_violation = 0.0;  // max over samples of (s a_t - t a_s)_+
  double tolerance = 0.0;      // 1e-10 * (1 + max |grad a|) actually used
};

// Samples the closure of Omega_hat on a (samples x samples) lattice.
CoefficientCheck check_coefficient(const Coefficient& a,
                                   const DomainProfile& profile,
                                   int samples = 256);

}  // namespace drev

#endif
