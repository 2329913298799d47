#pragma once
// Parameter sweeps over the quench observables: time series with the
// energy-matched equilibrium comparison columns, initial-temperature sweeps
// at fixed t, and long-time window averages.  Rows are independent and are
// evaluated by a worker pool; a per-row quadrature failure marks that row
// and never aborts the scan.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "xyq/entanglement.hpp"
#include "xyq/model.hpp"
#include "xyq/parallel.hpp"
#include "xyq/quench.hpp"
#include "xyq/thermo.hpp"
#include "xyq/version.hpp"

namespace xyq {

struct ScanRow {
  double axis_value = 0.0;
  Correlators correlators;
  double energy = 0.0;
  double e_n = 0.0;
  std::optional<double> e_n_equilibrium;  // filled by time_series only
  std::optional<double> m_z_equilibrium;
  bool converged = true;
  std::string error;  // empty when converged
};

struct ScanMetadata {
  ModelParams model;        // for beta sweeps, alpha holds the first grid value
  QuadratureSpec quadrature;
  std::optional<double> matched_beta;               // +inf encodes beta = infinite
  std::optional<double> t_fixed;                    // temperature sweeps
  std::optional<std::array<double, 3>> window;      // {t_min, t_max, step} averages
  std::string tool_version = kVersion;
};

struct ScanResult {
  std::string axis;  // "time" | "beta"
  std::vector<ScanRow> rows;
  ScanMetadata metadata;
};

struct WindowAverage {
  double mean_m_z = 0.0;
  double mean_e_n = 0.0;
  std::size_t samples = 0;
};

namespace detail {

inline void check_increasing(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
}

// Quench observables for one row; exceptions are recorded on the row.
inline void fill_quench_row(ScanRow& row, const ModelParams& p, double t,
                            const QuadratureSpec& spec) {
  try {
    const QuenchSnapshot snap = quench_snapshot(p, t, spec);
    row.correlators = snap.correlators;
    row.energy = snap.energy;
    row.e_n = log_negativity(assemble(snap.correlators));
    row.converged = true;
  } catch (const std::exception& e) {
    row.converged = false;
    row.error = e.what();
    row.correlators = {};
    row.energy = std::numeric_limits<double>::quiet_NaN();
    row.e_n = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace detail

// One row per t.  The equilibrium comparison columns hold the initial state
// (alpha, a) on the t = 0 row and the energy-matched state (matched beta, b)
// on every t > 0 row; the matched beta is computed once and recorded in the
// metadata.
inline ScanResult time_series(const ModelParams& params, std::span<const double> t_grid,
                              const QuadratureSpec& spec, unsigned workers = 1) {
  params.validate();
  spec.validate();
  detail::check_increasing(t_grid, "time_series");
  if (!(t_grid.front() >= 0.0))
    throw std::invalid_argument("time_series: grid times must be >= 0");

  ScanResult out;
  out.axis = "time";
  out.metadata.model = params;
  out.metadata.quadrature = spec;

  // Comparison columns: the initial state for the t = 0 row, the
  // energy-matched state for every later row.  If the matching itself cannot
  // be computed the columns are omitted while the rows still run.
  std::optional<double> mz_init, en_init, mz_post, en_post;
  try {
    const BetaMatch match = match_beta(params, spec);
    const Correlators eq_init =
        eq_correlators(params.alpha, params.field_a, params.gamma, spec);
    const Correlators eq_post =
        eq_correlators(match.beta, params.field_b, params.gamma, spec);
    out.metadata.matched_beta = match.beta.value_or_infinity();
    mz_init = eq_init.m_z;
    en_init = log_negativity(assemble(eq_init));
    mz_post = eq_post.m_z;
    en_post = log_negativity(assemble(eq_post));
  } catch (const std::exception&) {
    out.metadata.matched_beta.reset();
  }

  out.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t i) {
    ScanRow& row = out.rows[i];
    row.axis_value = t_grid[i];
    detail::fill_quench_row(row, params, t_grid[i], spec);
    const bool initial = t_grid[i] == 0.0;
    row.m_z_equilibrium = initial ? mz_init : mz_post;
    row.e_n_equilibrium = initial ? en_init : en_post;
  });
  return out;
}

// One row per initial inverse temperature alpha = beta_grid[i], all with the
// same (gamma, a, b) and observed at the fixed time t_fixed.
inline ScanResult temperature_sweep(double gamma, double a, double b, double t_fixed,
                                    std::span<const double> beta_grid,
                                    const QuadratureSpec& spec, unsigned workers = 1) {
  spec.validate();
  detail::check_increasing(beta_grid, "temperature_sweep");
  if (!(beta_grid.front() > 0.0))
    throw std::invalid_argument("temperature_sweep: beta grid must be positive");
  if (!(t_fixed >= 0.0))
    throw std::invalid_argument("temperature_sweep: t_fixed must be >= 0");

  ScanResult out;
  out.axis = "beta";
  out.metadata.model = ModelParams{gamma, a, b, Beta(beta_grid.front())};
  out.metadata.model.validate();
  out.metadata.quadrature = spec;
  out.metadata.t_fixed = t_fixed;
  out.rows.resize(beta_grid.size());
  parallel_for(beta_grid.size(), workers, [&](std::size_t i) {
    ScanRow& row = out.rows[i];
    row.axis_value = beta_grid[i];
    ModelParams p{gamma, a, b, Beta(beta_grid[i])};
    detail::fill_quench_row(row, p, t_fixed, spec);
  });
  return out;
}

// Uniform means of M_z(t) and E_N(t) over the inclusive grid
// t_min, t_min+step, ..., t_max.  Any failed row aborts (an average over a
// partial window would be silently biased).
inline WindowAverage long_time_average(const ModelParams& params, double t_min,
                                       double t_max, double step,
                                       const QuadratureSpec& spec, unsigned workers = 1) {
  params.validate();
  spec.validate();
  if (!(t_min >= 0.0) || !(t_min < t_max) || !(step > 0.0))
    throw std::invalid_argument("long_time_average: need 0 <= t_min < t_max, step > 0");

  const std::size_t n =
      static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  std::vector<ScanRow> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    rows[i].axis_value = t_min + step * static_cast<double>(i);
    detail::fill_quench_row(rows[i], params, rows[i].axis_value, spec);
  });

  WindowAverage avg;
  avg.samples = n;
  for (const ScanRow& row : rows) {
    if (!row.converged)
      throw ConvergenceError("long_time_average: row at t = " +
                                 std::to_string(row.axis_value) + " failed: " + row.error,
                             IntegrationResult{});
    avg.mean_m_z += row.correlators.m_z;
    avg.mean_e_n += row.e_n;
  }
  avg.mean_m_z /= static_cast<double>(n);
  avg.mean_e_n /= static_cast<double>(n);
  return avg;
}

}  // namespace xyq
