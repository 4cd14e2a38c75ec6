#include "drev/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>

#include "drev/analysis.hpp"
#include "drev/io.hpp"

namespace drev {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = 3.14159265358979323846;

DomainProfile profile_from(const RunConfig& cfg) {
  std::string kind = cfg.get_string("problem.profile", std::string("annulus"));
  if (kind == "annulus")
    return DomainProfile::annulus(cfg.get_double("problem.R1"),
                                  cfg.get_double("problem.R2"));
  if (kind == "ellipsoidal")
    return DomainProfile::ellipsoidal(
        cfg.get_double("problem.a"), cfg.get_double("problem.b"),
        cfg.get_double("problem.c"), cfg.get_double("problem.d"));
  if (kind == "torus")
    return DomainProfile::torus(cfg.get_double("problem.a_major"),
                                cfg.get_double("problem.b_minor"));
  throw ConfigError("unknown profile kind: " + kind);
}

Coefficient coeff_from(const RunConfig& cfg) {
  std::string kind =
      cfg.get_string("problem.coefficient", std::string("constant"));
  if (kind == "constant")
    return Coefficient::constant(
        cfg.get_double("problem.coefficient_value", 1.0));
  if (kind == "radial_power")
    return Coefficient::radial_power(
        cfg.get_double("problem.coefficient_alpha", 1.0));
  if (kind == "s_affine") {
    double c0 = cfg.get_double("problem.coefficient_value", 1.0);
    double c1 = cfg.get_double("problem.coefficient_slope", 1.0);
    if (c1 < 0.0)
      throw ConfigError("s_affine coefficient needs a nonnegative slope");
    return Coefficient::s_profile([c0, c1](double s) { return c0 + c1 * s; },
                                  "s_affine");
  }
  throw ConfigError("unknown coefficient kind: " + kind);
}

std::optional<std::function<double(double)>> radial_part(const RunConfig& cfg) {
  std::string kind =
      cfg.get_string("problem.coefficient", std::string("constant"));
  if (kind == "constant") {
    double v = cfg.get_double("problem.coefficient_value", 1.0);
    return [v](double) { return v; };
  }
  if (kind == "radial_power") {
    double alpha = cfg.get_double("problem.coefficient_alpha", 1.0);
    return [alpha](double r) { return std::pow(r, alpha); };
  }
  return std::nullopt;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw ConfigError("empty list value");
  return out;
}

json cone_json(const ConeDiagnostics& c) {
  return json{{"member", c.member},
              {"min_value", c.min_value},
              {"max_increase", c.max_increase},
              {"max_theta_slope", c.max_theta_slope},
              {"tol", c.tol}};
}

json energy_json(const Energy& e) {
  return json{{"dirichlet", e.dirichlet},
              {"nonlinear", e.nonlinear},
              {"total", e.total}};
}

json report_header(const RunConfig& cfg, const std::string& command) {
  json j;
  j["tool"] = "drev";
  j["version"] = kVersion;
  j["command"] = command;
  json echo = json::object();
  for (const auto& [k, v] : cfg.entries()) echo[k] = v;
  j["config"] = std::move(echo);
  return j;
}

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions o;
  o.max_iter = cfg.get_int("solver.max_iter", 5000);
  o.tol = cfg.get_double("solver.tol", 1e-8);
  return o;
}

RunOutcome cmd_solve(const RunConfig& cfg) {
  json j = report_header(cfg, "solve");
  Decomposition dec(cfg.get_int("problem.m"), cfg.get_int("problem.n"));
  double p = cfg.get_double("problem.p");
  auto spec = make_problem(dec, profile_from(cfg), coeff_from(cfg), p);
  int n_theta = cfg.get_int("grid.n_theta", 64);
  int n_rho = cfg.get_int("grid.n_rho", 96);
  DiscreteProblem dp(spec, n_theta, n_rho);

  j["gates"] = {{"coefficient_nonnegative", spec.coeff_check.nonnegative},
                {"coefficient_monotone", spec.coeff_check.monotone},
                {"monotonicity_tolerance", spec.coeff_check.tolerance},
                {"profile_monotone", spec.profile_monotone},
                {"outside_proven_range", spec.outside_proven_range}};

  bool is_annulus =
      cfg.get_string("problem.profile", std::string("annulus")) == "annulus";
  auto a_r = radial_part(cfg);
  std::string init_kind = cfg.get_string("solver.init", std::string("auto"));
  if (init_kind == "auto")
    init_kind = (is_annulus && a_r) ? "perturbed" : "product";

  std::optional<RadialSolution> rad;
  if (is_annulus && a_r) {
    ShootOptions sh;
    sh.n_steps = cfg.get_int("solver.radial_steps", 16384);
    rad = shoot_radial(dec.N(), cfg.get_double("problem.R1"),
                       cfg.get_double("problem.R2"), p, *a_r, sh);
  }

  Field init;
  double delta = cfg.get_double("solver.delta", 0.2);
  if (init_kind == "perturbed") {
    if (!rad)
      throw ConfigError(
          "perturbed initializer needs an annulus and a radial coefficient");
    auto angular = angular_eigenpair(dec, n_theta);
    init = perturbed_radial_init(dp, *rad, angular, delta);
  } else if (init_kind == "radial") {
    if (!rad)
      throw ConfigError(
          "radial initializer needs an annulus and a radial coefficient");
    init = interpolate_radial(dp.grid_ptr(), *rad);
  } else if (init_kind == "product") {
    init = sample_field(dp.grid_ptr(), [&](double, double r) {
      double lo = dp.grid().profile().r_min();
      double hi = dp.grid().profile().r_max();
      double x = (r - lo) / (hi - lo);
      return std::sin(kPi * std::clamp(x, 0.0, 1.0));
    });
  } else {
    throw ConfigError("unknown initializer: " + init_kind);
  }

  auto rep = dp.solve_ground_state(init, solve_options(cfg));

  j["solve"] = {{"converged", rep.converged},
                {"iterations", rep.iterations},
                {"el_residual", rep.el_residual},
                {"invariance_gap", rep.invariance_gap},
                {"nehari_alpha", rep.nehari_alpha},
                {"tau", rep.tau},
                {"projection_released", rep.projection_released},
                {"message", rep.message},
                {"sup_norm", rep.u.max_abs()},
                {"initializer", init_kind}};
  j["energy"] = energy_json(rep.energy);
  j["cone"] = cone_json(rep.cone);
  j["symmetry"] = {{"nonradiality", nonradiality(rep.u)},
                   {"nonradial", nonradiality(rep.u) >= kNonradialThreshold}};
  if (rad) {
    auto sym = symmetry_report(dp, rep.u, *rad);
    j["symmetry"]["radial_energy"] = sym.radial_energy;
    j["symmetry"]["energy_gap"] = sym.energy_gap;
    auto angular = angular_eigenpair(dec, std::max(n_theta, 128));
    auto sv = second_variation(*rad, angular, p, *a_r);
    auto hardy = hardy_smallest(dec.N(), cfg.get_double("problem.R1"),
                                cfg.get_double("problem.R2"),
                                cfg.get_int("eigs.n_r", 2048));
    j["second_variation"] = {
        {"value", sv.value},
        {"negative", sv.negative},
        {"mu1", sv.mu1},
        {"lambda1", hardy.lambda1},
        {"breaking_threshold", breaking_threshold(dec.N(), hardy.lambda1)},
        {"p_minus_2", p - 2.0}};
  }

  if (cfg.has("output.field_csv")) {
    std::string path = cfg.get_string("output.field_csv");
    write_field_csv(path, rep.u);
    j["artifacts"] = {{"field_csv", path}};
  }
  return {rep.converged ? 0 : 2, std::move(j)};
}

RunOutcome cmd_angular(const RunConfig& cfg) {
  json j = report_header(cfg, "angular");
  Decomposition dec(cfg.get_int("problem.m"), cfg.get_int("problem.n"));
  int n_theta = cfg.get_int("eigs.n_theta", 512);
  auto res = angular_eigenpair(dec, n_theta);
  double ref = 2.0 * dec.N();
  double scale = (dec.m - dec.n) / static_cast<double>(dec.N());
  double sup_err = 0.0;
  {
    // closed-form first mode, normalized like the computed one
    std::vector<double> exact(res.theta.size());
    double mx = 0.0;
    for (size_t k = 0; k < exact.size(); ++k) {
      exact[k] = scale - std::cos(2.0 * res.theta[k]);
      mx = std::max(mx, std::abs(exact[k]));
    }
    double dot = 0.0;
    for (size_t k = 0; k < exact.size(); ++k) {
      exact[k] /= mx;
      dot += exact[k] * res.psi1[k];
    }
    double sign = dot >= 0.0 ? 1.0 : -1.0;
    for (size_t k = 0; k < exact.size(); ++k)
      sup_err = std::max(sup_err, std::abs(res.psi1[k] - sign * exact[k]));
  }
  j["angular"] = {{"m", dec.m},
                  {"n", dec.n},
                  {"n_theta", n_theta},
                  {"mu0", res.mu0},
                  {"mu1", res.mu1},
                  {"reference_2N", ref},
                  {"mu1_rel_error", std::abs(res.mu1 - ref) / ref},
                  {"psi1_sup_error", sup_err},
                  {"iterations", res.iterations}};
  return {0, std::move(j)};
}

RunOutcome cmd_hardy(const RunConfig& cfg) {
  json j = report_header(cfg, "hardy");
  int N = cfg.get_int("problem.N");
  double R1 = cfg.get_double("problem.R1");
  double R2 = cfg.get_double("problem.R2");
  int n_r = cfg.get_int("eigs.n_r", 2048);
  auto res = hardy_smallest(N, R1, R2, n_r);
  double L = std::log(R2 / R1);
  double closed = 0.25 * (N - 2) * (N - 2) + kPi * kPi / (L * L);
  double lower = 0.25 * (N - 2) * (N - 2);
  j["hardy"] = {{"N", N},
                {"R1", R1},
                {"R2", R2},
                {"n_r", n_r},
                {"lambda1", res.lambda1},
                {"closed_form", closed},
                {"rel_gap_to_closed_form",
                 std::abs(res.lambda1 - closed) / closed},
                {"lower_bound", lower},
                {"exceeds_lower_bound", res.lambda1 > lower},
                {"iterations", res.iterations}};
  return {0, std::move(j)};
}

RunOutcome cmd_thin_annulus(const RunConfig& cfg) {
  json j = report_header(cfg, "thin-annulus");
  int N = cfg.get_int("problem.N", 3);
  auto Rs = parse_list(cfg.get_string("sweep.R_values", std::string("10,30,100")));
  double width = cfg.get_double("sweep.width", 1.0);
  int n_r = cfg.get_int("eigs.n_r", 2048);
  auto entries = thin_annulus_sweep(
      N, Rs, [width](double R) { return R + width; }, n_r);
  json arr = json::array();
  bool decreasing = true;
  for (size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    arr.push_back({{"R", e.R},
                   {"R2", e.R2},
                   {"lambda1", e.lambda},
                   {"lambda_over_R2", e.ratio},
                   {"deviation_from_pi2", e.deviation}});
    if (k > 0 && !(e.deviation < entries[k - 1].deviation)) decreasing = false;
  }
  j["thin_annulus"] = {{"N", N},
                       {"width", width},
                       {"pi2", kPi * kPi},
                       {"entries", std::move(arr)},
                       {"deviation_decreasing", decreasing}};
  return {0, std::move(j)};
}

RunOutcome cmd_multiplicity(const RunConfig& cfg) {
  json j = report_header(cfg, "multiplicity");
  int N = cfg.get_int("problem.N");
  double R1 = cfg.get_double("problem.R1");
  double R2 = cfg.get_double("problem.R2");
  double p = cfg.get_double("problem.p");
  int k = cfg.get_int("problem.k", N / 2);
  auto a_r = radial_part(cfg);
  if (!a_r) throw ConfigError("multiplicity sweep needs a radial coefficient");

  MultiplicityOptions opts;
  opts.n_theta = cfg.get_int("grid.n_theta", 64);
  opts.n_rho = cfg.get_int("grid.n_rho", 96);
  opts.delta = cfg.get_double("solver.delta", 0.2);
  opts.radial_steps = cfg.get_int("solver.radial_steps", 16384);
  opts.solve = solve_options(cfg);

  auto res = multiplicity_sweep(N, R1, R2, p, *a_r, k, opts);
  json branches = json::array();
  bool all_converged = true;
  for (const auto& b : res.branches) {
    all_converged = all_converged && b.report.converged;
    branches.push_back({{"m", b.decomp.m},
                        {"n", b.decomp.n},
                        {"mu1", b.mu1},
                        {"converged", b.report.converged},
                        {"iterations", b.report.iterations},
                        {"el_residual", b.report.el_residual},
                        {"energy", b.report.energy.total},
                        {"nonradiality", b.symmetry.nonradiality},
                        {"nonradial", b.symmetry.nonradial},
                        {"radial_energy", b.symmetry.radial_energy},
                        {"energy_gap", b.symmetry.energy_gap},
                        {"message", b.report.message}});
  }
  json pairs = json::array();
  for (size_t i = 0; i < res.distinct_pairs.size(); ++i)
    pairs.push_back({{"first", res.distinct_pairs[i].first},
                     {"second", res.distinct_pairs[i].second},
                     {"sup_difference", res.pair_sup_difference[i]}});
  j["multiplicity"] = {{"N", N},
                       {"p", p},
                       {"k", k},
                       {"lambda1", res.lambda1},
                       {"p_lower", res.p_lower},
                       {"p_upper", res.p_upper},
                       {"window_ok", res.window_ok},
                       {"branches", std::move(branches)},
                       {"distinct_pairs", std::move(pairs)}};
  return {all_converged ? 0 : 2, std::move(j)};
}

RunOutcome cmd_certify(const RunConfig& cfg) {
  json j = report_header(cfg, "certify");
  Decomposition dec(cfg.get_int("problem.m"), cfg.get_int("problem.n"));
  double p = cfg.get_double("problem.p");
  auto spec = make_problem(dec, profile_from(cfg), coeff_from(cfg), p);
  int n_theta = cfg.get_int("grid.n_theta", 64);
  int n_rho = cfg.get_int("grid.n_rho", 64);
  DiscreteProblem dp(spec, n_theta, n_rho);
  int trials = cfg.get_int("certify.trials", 100);
  unsigned seed = static_cast<unsigned>(cfg.get_int("certify.seed", 12345));

  const Grid& g = dp.grid();
  double h = std::max(g.dtheta(), g.drho());
  int failures = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    Field u = random_cone_field(dp.grid_ptr(), seed + t);
    auto cert = dp.certify_invariance(u);
    double bound = 10.0 * h * h * cert.v.max_abs();
    double slope = cert.cone_of_image.max_theta_slope;
    worst_ratio = std::max(worst_ratio, bound > 0.0 ? slope / bound : 0.0);
    if (!(slope <= bound) || cert.cone_of_image.min_value < -cert.cone_of_image.tol)
      ++failures;
  }
  bool pass = failures == 0;
  j["certify"] = {{"trials", trials},
                  {"failures", failures},
                  {"grid_h", h},
                  {"slope_bound_factor", 10.0},
                  {"worst_slope_over_bound", worst_ratio},
                  {"pass", pass}};
  return {pass ? 0 : 2, std::move(j)};
}

}  // namespace

RunOutcome run_config(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  try {
    std::string cmd = cfg.get_string("command");
    if (cmd == "solve")
      out = cmd_solve(cfg);
    else if (cmd == "angular")
      out = cmd_angular(cfg);
    else if (cmd == "hardy")
      out = cmd_hardy(cfg);
    else if (cmd == "thin-annulus")
      out = cmd_thin_annulus(cfg);
    else if (cmd == "multiplicity")
      out = cmd_multiplicity(cfg);
    else if (cmd == "certify")
      out = cmd_certify(cfg);
    else
      throw ConfigError("unknown command: " + cmd);
  } catch (const ConfigError& e) {
    out.exit_code = 1;
    out.report = {{"error", e.what()}, {"kind", "config"}};
  } catch (const std::invalid_argument& e) {
    out.exit_code = 1;
    out.report = {{"error", e.what()}, {"kind", "config"}};
  } catch (const std::exception& e) {
    out.exit_code = 2;
    out.report = {{"error", e.what()}, {"kind", "numeric"}};
  }
  auto t1 = std::chrono::steady_clock::now();
  out.report["wall_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return out;
}

}  // namespace drev
