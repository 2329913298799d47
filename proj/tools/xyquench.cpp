// xyquench: evaluate quench and equilibrium observables of the
// transverse-field XY chain and emit plot-ready CSV/JSON.
//
// Configuration precedence: built-in defaults (and the fig1/fig2 presets) <
// --config JSON file < explicit command-line flags.

#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "xyq/cli.hpp"
#include "xyq/version.hpp"

namespace {

double parse_beta_like(const std::string& s, const char* what) {
  if (s == "inf" || s == "infinite" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(what) + ": expected a number or 'inf', got '" +
                               s + "'");
  }
}

// Apply config-file values for keys whose flags were not explicitly set.
void apply_config_file(const std::string& path, xyq::cli::RunConfig& cfg,
                       std::string& alpha_str, std::string& beta_str,
                       const std::function<bool(const char*)>& unset) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config: " + std::string(e.what()));
  }
  auto num = [&](const char* key, double& target, const char* flag) {
    if (j.contains(key) && unset(flag)) target = j.at(key).get<double>();
  };
  if (j.contains("alpha") && unset("--alpha"))
    alpha_str = j.at("alpha").is_string() ? j.at("alpha").get<std::string>()
                                          : std::to_string(j.at("alpha").get<double>());
  if (j.contains("beta") && unset("--beta"))
    beta_str = j.at("beta").is_string() ? j.at("beta").get<std::string>()
                                        : std::to_string(j.at("beta").get<double>());
  num("gamma", cfg.gamma, "--gamma");
  num("field_a", cfg.field_a, "--a-field");
  num("field_b", cfg.field_b, "--b-field");
  num("h_field", cfg.h_field, "--h-field");
  num("t", cfg.t, "--t");
  num("t_fixed", cfg.t_fixed, "--t-fixed");
  num("t_min", cfg.t_min, "--t-min");
  num("t_max", cfg.t_max, "--t-max");
  num("t_step", cfg.t_step, "--t-step");
  num("beta_min", cfg.beta_min, "--beta-min");
  num("beta_max", cfg.beta_max, "--beta-max");
  num("beta_step", cfg.beta_step, "--beta-step");
  num("window_min", cfg.window_min, "--window-min");
  num("window_max", cfg.window_max, "--window-max");
  num("window_step", cfg.window_step, "--window-step");
  num("abs_tol", cfg.quadrature.abs_tol, "--abs-tol");
  num("rel_tol", cfg.quadrature.rel_tol, "--rel-tol");
  num("solver_tol", cfg.solver_tol, "--solver-tol");
  if (j.contains("max_subdivisions") && unset("--max-subdivisions"))
    cfg.quadrature.max_subdivisions = j.at("max_subdivisions").get<int>();
  if (j.contains("output") && unset("--output")) cfg.output = j.at("output").get<std::string>();
  if (j.contains("format") && unset("--format")) cfg.format = j.at("format").get<std::string>();
  if (j.contains("workers") && unset("--workers"))
    cfg.workers = j.at("workers").get<unsigned>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form observables of the suddenly quenched XY chain"};
  app.set_version_flag("--version", std::string("xyquench ") + xyq::kVersion);
  app.require_subcommand(1);

  xyq::cli::RunConfig cfg;
  std::string alpha_str = "200";
  std::string beta_str = "1";
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--abs-tol", cfg.quadrature.abs_tol, "quadrature absolute tolerance");
    sub->add_option("--rel-tol", cfg.quadrature.rel_tol, "quadrature relative tolerance");
    sub->add_option("--max-subdivisions", cfg.quadrature.max_subdivisions,
                    "adaptive subdivision budget");
    sub->add_option("--output,-o", cfg.output, "output file path");
    sub->add_option("--format", cfg.format, "output format: csv or json");
    sub->add_option("--workers", cfg.workers,
                    "worker threads (default: XYQ_WORKERS or hardware)");
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--gamma", cfg.gamma, "anisotropy gamma");
    sub->add_option("--alpha", alpha_str, "initial inverse temperature (number or 'inf')");
    sub->add_option("--a-field", cfg.field_a, "pre-quench field a");
    sub->add_option("--b-field", cfg.field_b, "post-quench field b");
  };

  CLI::App* eq = app.add_subcommand("equilibrium", "equilibrium observables at (beta, h)");
  eq->add_option("--beta", beta_str, "inverse temperature (number or 'inf')");
  eq->add_option("--h-field", cfg.h_field, "transverse field h");
  eq->add_option("--gamma", cfg.gamma, "anisotropy gamma");
  add_common(eq);

  CLI::App* qp = app.add_subcommand("quench-point", "evolved-state observables at one t");
  add_model(qp);
  qp->add_option("--t", cfg.t, "time after the quench");
  add_common(qp);

  CLI::App* mb = app.add_subcommand("match-beta", "energy-matched inverse temperature");
  add_model(mb);
  mb->add_option("--solver-tol", cfg.solver_tol, "energy residual tolerance");
  add_common(mb);

  CLI::App* f1 = app.add_subcommand(
      "fig1", "time series at gamma=0.5, alpha=200, a=0.5, b=0 (grid [0,10] step 0.02)");
  add_model(f1);
  f1->add_option("--t-min", cfg.t_min, "grid start");
  f1->add_option("--t-max", cfg.t_max, "grid end");
  f1->add_option("--t-step", cfg.t_step, "grid step");
  add_common(f1);

  auto add_sweep_flags = [&](CLI::App* sub) {
    add_model(sub);
    sub->add_option("--t-fixed", cfg.t_fixed, "observation time");
    sub->add_option("--beta-min", cfg.beta_min, "grid start");
    sub->add_option("--beta-max", cfg.beta_max, "grid end");
    sub->add_option("--beta-step", cfg.beta_step, "grid step");
    add_common(sub);
  };
  CLI::App* f2 = app.add_subcommand(
      "fig2", "initial-temperature sweep at gamma=0.5, a=10, b=0, t=1 (beta in [0.05,2])");
  add_sweep_flags(f2);
  CLI::App* sw = app.add_subcommand("sweep", "initial-temperature sweep, explicit parameters");
  add_sweep_flags(sw);

  CLI::App* av = app.add_subcommand("average", "long-time window averages of M_z and E_N");
  add_model(av);
  av->add_option("--window-min", cfg.window_min, "window start");
  av->add_option("--window-max", cfg.window_max, "window end");
  av->add_option("--window-step", cfg.window_step, "window step");
  add_common(av);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // --help/--version exit 0; any parse failure is a config error
  }

  CLI::App* active = nullptr;
  if (eq->parsed()) { active = eq; cfg.command = xyq::cli::Command::equilibrium; }
  if (qp->parsed()) { active = qp; cfg.command = xyq::cli::Command::quench_point; }
  if (mb->parsed()) { active = mb; cfg.command = xyq::cli::Command::match_beta; }
  if (f1->parsed()) { active = f1; cfg.command = xyq::cli::Command::fig1; }
  if (f2->parsed()) { active = f2; cfg.command = xyq::cli::Command::fig2; }
  if (sw->parsed()) { active = sw; cfg.command = xyq::cli::Command::sweep; }
  if (av->parsed()) { active = av; cfg.command = xyq::cli::Command::average; }
  auto unset = [&](const char* flag) {
    const CLI::Option* o = active ? active->get_option_no_throw(flag) : nullptr;
    return o == nullptr || o->count() == 0;
  };

  try {
    if (cfg.command == xyq::cli::Command::fig2) {
      // Fig. 2 preset; config file and explicit flags still take precedence
      if (unset("--gamma")) cfg.gamma = 0.5;
      if (unset("--a-field")) cfg.field_a = 10.0;
      if (unset("--b-field")) cfg.field_b = 0.0;
      if (unset("--t-fixed")) cfg.t_fixed = 1.0;
    }
    if (!config_path.empty()) apply_config_file(config_path, cfg, alpha_str, beta_str, unset);
    cfg.alpha = parse_beta_like(alpha_str, "--alpha");
    cfg.beta = parse_beta_like(beta_str, "--beta");
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return xyq::cli::run(cfg, std::cout, std::cerr);
}
