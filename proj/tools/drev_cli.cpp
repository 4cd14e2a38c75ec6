// Command line front end; talks to the library exclusively through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "drev.h"

namespace {

std::string kv(const std::string& key, const std::string& value) {
  return key + " = " + value + "\n";
}

std::string kv(const std::string& key, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return kv(key, std::string(buf));
}

std::string kv(const std::string& key, int value) {
  return kv(key, std::to_string(value));
}

int execute(const std::string& config_text, const std::string& out_path) {
  drev_run* run = nullptr;
  drev_status st = drev_run_config(config_text.c_str(), &run);
  if (st != DREV_OK) {
    std::cerr << "error: " << drev_last_error() << "\n";
    return 1;
  }
  std::string report = drev_run_report(run);
  int code = drev_run_exit_code(run);
  drev_run_free(run);
  std::cout << report;
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    os << report;
  }
  return code;
}

struct Common {
  std::string out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-o,--out", c.out, "also write the JSON report to this file");
  app->add_option("--set", c.sets,
                  "extra config entries key=value (repeatable)")
      ->type_name("KEY=VALUE");
}

std::string apply_sets(std::string text, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      text += s + " = true\n";
    } else {
      text += s.substr(0, eq) + " = " + s.substr(eq + 1) + "\n";
    }
  }
  return text;
}

struct ProblemFlags {
  int m = 1, n = 1;
  double p = 4.0;
  std::string profile = "annulus";
  double R1 = 1.0, R2 = 2.0;
  double ea = 3.0, eb = 2.0, ec = 0.8, ed = 1.0;
  double a_major = 2.0, b_minor = 1.0;
  std::string coefficient = "constant";
  double value = 1.0, alpha = 1.0, slope = 1.0;
};

void add_problem(CLI::App* app, ProblemFlags& f, bool with_exponent = true) {
  app->add_option("--m", f.m, "first factor dimension")->required();
  app->add_option("--n", f.n, "second factor dimension")->required();
  if (with_exponent)
    app->add_option("--p", f.p, "nonlinearity exponent (> 2)")->required();
  app->add_option("--profile", f.profile,
                  "annulus | ellipsoidal | torus")
      ->check(CLI::IsMember({"annulus", "ellipsoidal", "torus"}));
  app->add_option("--R1", f.R1, "inner radius (annulus)");
  app->add_option("--R2", f.R2, "outer radius (annulus)");
  app->add_option("--ell-a", f.ea, "outer s semi-axis (ellipsoidal)");
  app->add_option("--ell-b", f.eb, "outer t semi-axis (ellipsoidal)");
  app->add_option("--ell-c", f.ec, "inner s semi-axis (ellipsoidal)");
  app->add_option("--ell-d", f.ed, "inner t semi-axis (ellipsoidal)");
  app->add_option("--major", f.a_major, "center distance (torus)");
  app->add_option("--minor", f.b_minor, "tube radius (torus)");
  app->add_option("--coefficient", f.coefficient,
                  "constant | radial_power | s_affine")
      ->check(CLI::IsMember({"constant", "radial_power", "s_affine"}));
  app->add_option("--value", f.value, "constant coefficient value / offset");
  app->add_option("--alpha", f.alpha, "radial power exponent");
  app->add_option("--slope", f.slope, "s_affine slope");
}

std::string problem_text(const ProblemFlags& f, bool with_exponent = true) {
  std::string t;
  t += kv("problem.m", f.m);
  t += kv("problem.n", f.n);
  if (with_exponent) t += kv("problem.p", f.p);
  t += kv("problem.profile", f.profile);
  if (f.profile == "annulus") {
    t += kv("problem.R1", f.R1);
    t += kv("problem.R2", f.R2);
  } else if (f.profile == "ellipsoidal") {
    t += kv("problem.a", f.ea);
    t += kv("problem.b", f.eb);
    t += kv("problem.c", f.ec);
    t += kv("problem.d", f.ed);
  } else {
    t += kv("problem.a_major", f.a_major);
    t += kv("problem.b_minor", f.b_minor);
  }
  t += kv("problem.coefficient", f.coefficient);
  t += kv("problem.coefficient_value", f.value);
  t += kv("problem.coefficient_alpha", f.alpha);
  t += kv("problem.coefficient_slope", f.slope);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drev: positive solutions of -Lap u = a u^{p-1} on domains of "
               "double revolution"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(drev_version()));

  // run: execute a configuration file as-is
  auto* run = app.add_subcommand("run", "execute a configuration file");
  std::string cfg_path;
  Common run_c;
  run->add_option("config", cfg_path, "configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(run, run_c);

  // solve
  auto* solve = app.add_subcommand("solve", "constrained ground state solve");
  ProblemFlags sf;
  Common solve_c;
  int s_nt = 64, s_nr = 96, s_maxit = 5000;
  double s_tol = 1e-8, s_delta = 0.2;
  std::string s_init = "auto", s_csv;
  add_problem(solve, sf);
  solve->add_option("--n-theta", s_nt, "angular nodes");
  solve->add_option("--n-rho", s_nr, "radial cells");
  solve->add_option("--tol", s_tol, "residual tolerance");
  solve->add_option("--max-iter", s_maxit, "iteration cap");
  solve->add_option("--delta", s_delta, "initializer perturbation size");
  solve->add_option("--init", s_init, "auto | perturbed | radial | product");
  solve->add_option("--field-csv", s_csv, "write the solution field as CSV");
  add_common(solve, solve_c);

  // angular
  auto* ang = app.add_subcommand("angular", "first angular eigenpair");
  int a_m = 1, a_n = 1, a_nt = 512;
  Common ang_c;
  ang->add_option("--m", a_m)->required();
  ang->add_option("--n", a_n)->required();
  ang->add_option("--n-theta", a_nt, "angular nodes");
  add_common(ang, ang_c);

  // hardy
  auto* hardy = app.add_subcommand("hardy", "weighted Hardy constant");
  int h_N = 3, h_nr = 2048;
  double h_R1 = 1.0, h_R2 = 2.0;
  Common hardy_c;
  hardy->add_option("--N", h_N)->required();
  hardy->add_option("--R1", h_R1)->required();
  hardy->add_option("--R2", h_R2)->required();
  hardy->add_option("--n-r", h_nr, "radial cells");
  add_common(hardy, hardy_c);

  // thin-annulus
  auto* thin = app.add_subcommand("thin-annulus",
                                  "Hardy constant on widening thin annuli");
  int t_N = 3, t_nr = 2048;
  std::string t_R = "10,30,100";
  double t_width = 1.0;
  Common thin_c;
  thin->add_option("--N", t_N, "dimension");
  thin->add_option("--R", t_R, "comma separated inner radii");
  thin->add_option("--width", t_width, "annulus width");
  thin->add_option("--n-r", t_nr, "radial cells");
  add_common(thin, thin_c);

  // multiplicity
  auto* mult = app.add_subcommand(
      "multiplicity", "branch sweep over decompositions of N");
  int m_N = 4, m_k = 2, m_nt = 64, m_nr = 96, m_maxit = 5000;
  double m_R1 = 1.0, m_R2 = 2.0, m_p = 4.0, m_tol = 1e-8, m_delta = 0.2;
  std::string m_coeff = "constant";
  double m_value = 1.0, m_alpha = 1.0;
  Common mult_c;
  mult->add_option("--N", m_N)->required();
  mult->add_option("--R1", m_R1)->required();
  mult->add_option("--R2", m_R2)->required();
  mult->add_option("--p", m_p)->required();
  mult->add_option("--k", m_k, "number of branches");
  mult->add_option("--coefficient", m_coeff, "constant | radial_power")
      ->check(CLI::IsMember({"constant", "radial_power"}));
  mult->add_option("--value", m_value);
  mult->add_option("--alpha", m_alpha);
  mult->add_option("--n-theta", m_nt);
  mult->add_option("--n-rho", m_nr);
  mult->add_option("--tol", m_tol);
  mult->add_option("--max-iter", m_maxit);
  mult->add_option("--delta", m_delta);
  add_common(mult, mult_c);

  // certify
  auto* cert = app.add_subcommand(
      "certify", "cone preservation of the inverse-operator map");
  ProblemFlags cf;
  int c_nt = 64, c_nr = 64, c_trials = 100, c_seed = 12345;
  Common cert_c;
  add_problem(cert, cf);
  cert->add_option("--n-theta", c_nt);
  cert->add_option("--n-rho", c_nr);
  cert->add_option("--trials", c_trials);
  cert->add_option("--seed", c_seed);
  add_common(cert, cert_c);

  CLI11_PARSE(app, argc, argv);

  std::string text;
  Common* common = nullptr;
  if (run->parsed()) {
    std::ifstream is(cfg_path);
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
    common = &run_c;
  } else if (solve->parsed()) {
    text = "command = solve\n" + problem_text(sf);
    text += kv("grid.n_theta", s_nt) + kv("grid.n_rho", s_nr);
    text += kv("solver.tol", s_tol) + kv("solver.max_iter", s_maxit);
    text += kv("solver.delta", s_delta) + kv("solver.init", s_init);
    if (!s_csv.empty()) text += kv("output.field_csv", s_csv);
    common = &solve_c;
  } else if (ang->parsed()) {
    text = "command = angular\n";
    text += kv("problem.m", a_m) + kv("problem.n", a_n);
    text += kv("eigs.n_theta", a_nt);
    common = &ang_c;
  } else if (hardy->parsed()) {
    text = "command = hardy\n";
    text += kv("problem.N", h_N) + kv("problem.R1", h_R1) +
            kv("problem.R2", h_R2) + kv("eigs.n_r", h_nr);
    common = &hardy_c;
  } else if (thin->parsed()) {
    text = "command = thin-annulus\n";
    text += kv("problem.N", t_N) + kv("sweep.R_values", t_R) +
            kv("sweep.width", t_width) + kv("eigs.n_r", t_nr);
    common = &thin_c;
  } else if (mult->parsed()) {
    text = "command = multiplicity\n";
    text += kv("problem.N", m_N) + kv("problem.R1", m_R1) +
            kv("problem.R2", m_R2) + kv("problem.p", m_p) +
            kv("problem.k", m_k);
    text += kv("problem.coefficient", m_coeff) +
            kv("problem.coefficient_value", m_value) +
            kv("problem.coefficient_alpha", m_alpha);
    text += kv("grid.n_theta", m_nt) + kv("grid.n_rho", m_nr);
    text += kv("solver.tol", m_tol) + kv("solver.max_iter", m_maxit) +
            kv("solver.delta", m_delta);
    common = &mult_c;
  } else if (cert->parsed()) {
    text = "command = certify\n" + problem_text(cf);
    text += kv("grid.n_theta", c_nt) + kv("grid.n_rho", c_nr);
    text += kv("certify.trials", c_trials) + kv("certify.seed", c_seed);
    common = &cert_c;
  }

  text = apply_sets(std::move(text), common->sets);
  return execute(text, common->out);
}
