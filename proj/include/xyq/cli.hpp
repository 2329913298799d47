#pragma once
// Command implementations behind the xyquench binary.  Kept header-only and
// stream-parameterized so tests can drive commands in-process.
//
// Exit codes: 0 success; 1 invalid configuration or I/O failure; 2 numerical
// failure (quadrature non-convergence, no bisection bracket, unphysical
// state); 3 scan completed with flagged rows.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "xyq/io.hpp"
#include "xyq/scan.hpp"

namespace xyq::cli {

enum class Command { equilibrium, quench_point, match_beta, fig1, fig2, sweep, average };

struct RunConfig {
  Command command = Command::fig1;

  // model parameters (quench commands)
  double gamma = 0.5;
  double field_a = 0.5;
  double field_b = 0.0;
  double alpha = 200.0;  // +inf = ground state

  // equilibrium command
  double beta = 1.0;  // +inf = ground state
  double h_field = 0.0;

  // single-point time / fixed sweep time
  double t = 0.0;
  double t_fixed = 1.0;

  // time grid (fig1)
  double t_min = 0.0, t_max = 10.0, t_step = 0.02;
  // initial-temperature grid (fig2 / sweep)
  double beta_min = 0.05, beta_max = 2.0, beta_step = 0.05;
  // averaging window (average)
  double window_min = 20.0, window_max = 100.0, window_step = 0.1;

  double solver_tol = 1e-8;
  QuadratureSpec quadrature;

  std::string output;  // empty: point commands print only; scans use default names
  std::string format;  // "csv" | "json" | "" (infer from extension, default csv)
  unsigned workers = 0;  // 0 = default_workers()
};

namespace detail {

inline Beta beta_value(double v) {
  return std::isinf(v) && v > 0 ? Beta::infinite() : Beta(v);
}

inline std::vector<double> make_grid(double lo, double hi, double step, const char* what) {
  if (!(step > 0.0) || !(lo <= hi))
    throw std::invalid_argument(std::string(what) + ": need min <= max and step > 0");
  std::vector<double> g;
  const std::size_t n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  g.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.push_back(lo + step * static_cast<double>(i));
  return g;
}

inline OutputFormat pick_format(const RunConfig& cfg, const std::string& path) {
  if (!cfg.format.empty()) return parse_format(cfg.format);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return OutputFormat::json;
  return OutputFormat::csv;
}

inline ModelParams model_of(const RunConfig& cfg) {
  ModelParams p{cfg.gamma, cfg.field_a, cfg.field_b, beta_value(cfg.alpha)};
  p.validate();
  return p;
}

inline void print_warnings(const ModelParams& p, std::ostream& err) {
  for (const std::string& w : p.warnings()) err << "warning: " << w << "\n";
}

inline void print_correlators(std::ostream& out, const Correlators& c, double e_n,
                              double energy) {
  out << "m_z = " << xyq::detail::fmt12(c.m_z) << "\n"
      << "t_xx = " << xyq::detail::fmt12(c.t_xx) << "\n"
      << "t_yy = " << xyq::detail::fmt12(c.t_yy) << "\n"
      << "t_zz = " << xyq::detail::fmt12(c.t_zz) << "\n"
      << "t_xy = " << xyq::detail::fmt12(c.t_xy) << "\n"
      << "E_N = " << xyq::detail::fmt12(e_n) << "\n"
      << "energy = " << xyq::detail::fmt12(energy) << "\n";
}

// Exit 3 when rows were flagged, else 0; reports the output path on stdout.
inline int finish_scan(const ScanResult& r, const RunConfig& cfg,
                       const std::string& default_name, std::ostream& out,
                       std::ostream& err) {
  const std::string path = cfg.output.empty() ? default_name : cfg.output;
  save(r, path, pick_format(cfg, path));
  std::size_t failed = 0;
  for (const ScanRow& row : r.rows)
    if (!row.converged) ++failed;
  out << "wrote " << path << " (" << r.rows.size() << " rows";
  if (r.metadata.matched_beta)
    out << ", matched beta = " << xyq::detail::fmt12(*r.metadata.matched_beta);
  out << ")\n";
  if (failed) {
    err << "warning: " << failed << " of " << r.rows.size() << " rows failed\n";
    return 3;
  }
  return 0;
}

inline int run_impl(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const QuadratureSpec& spec = cfg.quadrature;
  spec.validate();
  const unsigned workers = cfg.workers ? cfg.workers : default_workers();

  switch (cfg.command) {
    case Command::equilibrium: {
      if (!std::isfinite(cfg.gamma) || cfg.gamma == 0.0)
        throw std::invalid_argument("equilibrium: gamma must be finite and nonzero");
      const Beta beta = beta_value(cfg.beta);
      const Correlators c = eq_correlators(beta, cfg.h_field, cfg.gamma, spec);
      const double energy = energy_of(c, cfg.h_field, cfg.gamma);
      const double e_n = log_negativity(assemble(c));
      print_correlators(out, c, e_n, energy);
      if (!cfg.output.empty()) {
        ScanResult r;
        r.axis = "beta";
        r.metadata.model = ModelParams{cfg.gamma, cfg.h_field, cfg.h_field, beta};
        r.metadata.quadrature = spec;
        ScanRow row;
        row.axis_value = beta.value_or_infinity();
        row.correlators = c;
        row.energy = energy;
        row.e_n = e_n;
        r.rows.push_back(row);
        save(r, cfg.output, pick_format(cfg, cfg.output));
        out << "wrote " << cfg.output << "\n";
      }
      return 0;
    }

    case Command::quench_point: {
      const ModelParams p = model_of(cfg);
      print_warnings(p, err);
      const QuenchSnapshot snap = quench_snapshot(p, cfg.t, spec);
      const double e_n = log_negativity(assemble(snap.correlators));
      out << "t = " << xyq::detail::fmt12(cfg.t) << "\n";
      print_correlators(out, snap.correlators, e_n, snap.energy);
      if (!cfg.output.empty()) {
        ScanResult r;
        r.axis = "time";
        r.metadata.model = p;
        r.metadata.quadrature = spec;
        ScanRow row;
        row.axis_value = cfg.t;
        row.correlators = snap.correlators;
        row.energy = snap.energy;
        row.e_n = e_n;
        r.rows.push_back(row);
        save(r, cfg.output, pick_format(cfg, cfg.output));
        out << "wrote " << cfg.output << "\n";
      }
      return 0;
    }

    case Command::match_beta: {
      const ModelParams p = model_of(cfg);
      print_warnings(p, err);
      const BetaMatch m = xyq::match_beta(p, spec, cfg.solver_tol);
      out << "beta = "
          << (m.beta.is_infinite() ? std::string("inf")
                                   : xyq::detail::fmt12(m.beta.value()))
          << "\n"
          << "quench_energy = " << xyq::detail::fmt12(m.quench_energy) << "\n"
          << "eq_energy_at_beta = " << xyq::detail::fmt12(m.eq_energy_at_beta) << "\n"
          << "residual = " << xyq::detail::fmt12(m.residual) << "\n"
          << "bracket = [" << xyq::detail::fmt12(m.bracket.first) << ", "
          << xyq::detail::fmt12(m.bracket.second) << "]\n";
      return 0;
    }

    case Command::fig1: {
      const ModelParams p = model_of(cfg);
      print_warnings(p, err);
      const auto grid = make_grid(cfg.t_min, cfg.t_max, cfg.t_step, "fig1 time grid");
      const ScanResult r = time_series(p, grid, spec, workers);
      return finish_scan(r, cfg, "fig1.csv", out, err);
    }

    case Command::fig2:
    case Command::sweep: {
      const auto grid =
          make_grid(cfg.beta_min, cfg.beta_max, cfg.beta_step, "beta grid");
      ModelParams p{cfg.gamma, cfg.field_a, cfg.field_b, Beta(grid.front())};
      p.validate();
      print_warnings(p, err);
      const ScanResult r = temperature_sweep(cfg.gamma, cfg.field_a, cfg.field_b,
                                             cfg.t_fixed, grid, spec, workers);
      return finish_scan(r, cfg, cfg.command == Command::fig2 ? "fig2.csv" : "sweep.csv",
                         out, err);
    }

    case Command::average: {
      const ModelParams p = model_of(cfg);
      print_warnings(p, err);
      const WindowAverage avg = long_time_average(p, cfg.window_min, cfg.window_max,
                                                  cfg.window_step, spec, workers);
      out << "mean_m_z = " << xyq::detail::fmt12(avg.mean_m_z) << "\n"
          << "mean_e_n = " << xyq::detail::fmt12(avg.mean_e_n) << "\n"
          << "samples = " << avg.samples << "\n";
      if (!cfg.output.empty()) {
        nlohmann::json j;
        j["metadata"] = {{"tool_version", kVersion},
                         {"gamma", p.gamma},
                         {"field_a", p.field_a},
                         {"field_b", p.field_b},
                         {"alpha", xyq::detail::beta_json(p.alpha)},
                         {"window", {{"t_min", cfg.window_min},
                                     {"t_max", cfg.window_max},
                                     {"step", cfg.window_step}}}};
        j["means"] = {{"mean_m_z", avg.mean_m_z},
                      {"mean_e_n", avg.mean_e_n},
                      {"samples", avg.samples}};
        write_file_atomic(cfg.output, j.dump(2) + "\n");
        out << "wrote " << cfg.output << "\n";
      }
      return 0;
    }
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace detail

// Dispatch with the documented exit-code mapping.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return detail::run_impl(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NoBracketError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StateValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {  // filesystem and other environment errors
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace xyq::cli
