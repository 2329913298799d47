#pragma once
// ScanResult serialization.
//
// CSV: '#'-prefixed provenance header (all parameters, tolerances, tool
// version), then a fixed column row and one data row per scan row.  Numeric
// fields carry 12 significant digits; failed rows leave their numeric cells
// empty.  RFC-4180-style quoting, UTF-8, '\n' line ends.
//
// JSON: one object {"metadata": ..., "rows": [...]} with full-precision
// doubles (round-trips losslessly) and explicit converged/error fields.
//
// Files are written atomically: temp file in the target directory, fsync-free
// rename over the destination.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xyq/scan.hpp"

namespace xyq {

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be 'csv' or 'json' (got '" + s + "')");
}

namespace detail {

// 12 significant digits, shortest representation ("%.12g").
inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string axis_column(const ScanResult& r) {
  return r.axis == "beta" ? "beta" : "t";
}

inline nlohmann::json beta_json(const Beta& b) {
  if (b.is_infinite()) return "inf";
  return b.value();
}

inline Beta beta_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Beta::infinite();
  return Beta(j.get<double>());
}

}  // namespace detail

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"M_z",    "T_xx",   "T_yy", "T_zz",
                                                "T_xy",   "E_N",    "energy",
                                                "M_z_eq", "E_N_eq"};
  return cols;
}

inline std::string to_csv(const ScanResult& r) {
  std::ostringstream out;
  out << "# xyquench " << r.metadata.tool_version << "\n";
  out << "# axis = " << r.axis << "\n";
  out << "# gamma = " << detail::fmt12(r.metadata.model.gamma) << "\n";
  out << "# field_a = " << detail::fmt12(r.metadata.model.field_a) << "\n";
  out << "# field_b = " << detail::fmt12(r.metadata.model.field_b) << "\n";
  out << "# alpha = "
      << (r.metadata.model.alpha.is_infinite()
              ? std::string("inf")
              : detail::fmt12(r.metadata.model.alpha.value()))
      << "\n";
  out << "# abs_tol = " << detail::fmt12(r.metadata.quadrature.abs_tol) << "\n";
  out << "# rel_tol = " << detail::fmt12(r.metadata.quadrature.rel_tol) << "\n";
  out << "# max_subdivisions = " << r.metadata.quadrature.max_subdivisions << "\n";
  out << "# freq_hint = " << detail::fmt12(r.metadata.quadrature.freq_hint) << "\n";
  if (r.metadata.matched_beta)
    out << "# matched_beta = " << detail::fmt12(*r.metadata.matched_beta) << "\n";
  if (r.metadata.t_fixed)
    out << "# t_fixed = " << detail::fmt12(*r.metadata.t_fixed) << "\n";
  if (r.metadata.window)
    out << "# window = " << detail::fmt12((*r.metadata.window)[0]) << " "
        << detail::fmt12((*r.metadata.window)[1]) << " "
        << detail::fmt12((*r.metadata.window)[2]) << "\n";

  out << detail::axis_column(r);
  for (const auto& c : csv_columns()) out << "," << c;
  out << "\n";
  for (const ScanRow& row : r.rows) {
    out << detail::fmt12(row.axis_value);
    if (row.converged) {
      const Correlators& c = row.correlators;
      for (double v : {c.m_z, c.t_xx, c.t_yy, c.t_zz, c.t_xy, row.e_n, row.energy})
        out << "," << detail::fmt12(v);
    } else {
      out << ",,,,,,,";  // flagged row: numeric cells empty
    }
    out << (row.m_z_equilibrium ? "," + detail::fmt12(*row.m_z_equilibrium) : ",");
    out << (row.e_n_equilibrium ? "," + detail::fmt12(*row.e_n_equilibrium) : ",");
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json to_json(const ScanResult& r) {
  nlohmann::json meta;
  meta["tool_version"] = r.metadata.tool_version;
  meta["axis"] = r.axis;
  meta["model"] = {{"gamma", r.metadata.model.gamma},
                   {"field_a", r.metadata.model.field_a},
                   {"field_b", r.metadata.model.field_b},
                   {"alpha", detail::beta_json(r.metadata.model.alpha)}};
  meta["quadrature"] = {{"abs_tol", r.metadata.quadrature.abs_tol},
                        {"rel_tol", r.metadata.quadrature.rel_tol},
                        {"max_subdivisions", r.metadata.quadrature.max_subdivisions},
                        {"freq_hint", r.metadata.quadrature.freq_hint}};
  if (r.metadata.matched_beta) meta["matched_beta"] = *r.metadata.matched_beta;
  if (r.metadata.t_fixed) meta["t_fixed"] = *r.metadata.t_fixed;
  if (r.metadata.window)
    meta["window"] = {{"t_min", (*r.metadata.window)[0]},
                      {"t_max", (*r.metadata.window)[1]},
                      {"step", (*r.metadata.window)[2]}};

  nlohmann::json rows = nlohmann::json::array();
  const std::string axis = detail::axis_column(r);
  for (const ScanRow& row : r.rows) {
    nlohmann::json jr;
    jr[axis] = row.axis_value;
    jr["M_z"] = row.correlators.m_z;
    jr["T_xx"] = row.correlators.t_xx;
    jr["T_yy"] = row.correlators.t_yy;
    jr["T_zz"] = row.correlators.t_zz;
    jr["T_xy"] = row.correlators.t_xy;
    jr["E_N"] = row.e_n;
    jr["energy"] = row.energy;
    if (row.m_z_equilibrium) jr["M_z_eq"] = *row.m_z_equilibrium;
    if (row.e_n_equilibrium) jr["E_N_eq"] = *row.e_n_equilibrium;
    jr["converged"] = row.converged;
    if (!row.error.empty()) jr["error"] = row.error;
    rows.push_back(std::move(jr));
  }
  return nlohmann::json{{"metadata", std::move(meta)}, {"rows", std::move(rows)}};
}

inline ScanResult from_json(const nlohmann::json& j) {
  // NaN has no JSON literal and is dumped as null; read it back as NaN
  auto num = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  ScanResult r;
  const auto& meta = j.at("metadata");
  r.axis = meta.at("axis").get<std::string>();
  r.metadata.tool_version = meta.at("tool_version").get<std::string>();
  const auto& model = meta.at("model");
  r.metadata.model.gamma = model.at("gamma").get<double>();
  r.metadata.model.field_a = model.at("field_a").get<double>();
  r.metadata.model.field_b = model.at("field_b").get<double>();
  r.metadata.model.alpha = detail::beta_from_json(model.at("alpha"));
  const auto& q = meta.at("quadrature");
  r.metadata.quadrature.abs_tol = q.at("abs_tol").get<double>();
  r.metadata.quadrature.rel_tol = q.at("rel_tol").get<double>();
  r.metadata.quadrature.max_subdivisions = q.at("max_subdivisions").get<int>();
  r.metadata.quadrature.freq_hint = q.at("freq_hint").get<double>();
  if (meta.contains("matched_beta"))
    r.metadata.matched_beta = meta.at("matched_beta").get<double>();
  if (meta.contains("t_fixed")) r.metadata.t_fixed = meta.at("t_fixed").get<double>();
  if (meta.contains("window"))
    r.metadata.window = std::array<double, 3>{meta.at("window").at("t_min").get<double>(),
                                              meta.at("window").at("t_max").get<double>(),
                                              meta.at("window").at("step").get<double>()};
  const std::string axis = r.axis == "beta" ? "beta" : "t";
  for (const auto& jr : j.at("rows")) {
    ScanRow row;
    row.axis_value = jr.at(axis).get<double>();
    row.correlators.m_z = num(jr.at("M_z"));
    row.correlators.t_xx = num(jr.at("T_xx"));
    row.correlators.t_yy = num(jr.at("T_yy"));
    row.correlators.t_zz = num(jr.at("T_zz"));
    row.correlators.t_xy = num(jr.at("T_xy"));
    row.e_n = num(jr.at("E_N"));
    row.energy = num(jr.at("energy"));
    if (jr.contains("M_z_eq")) row.m_z_equilibrium = jr.at("M_z_eq").get<double>();
    if (jr.contains("E_N_eq")) row.e_n_equilibrium = jr.at("E_N_eq").get<double>();
    row.converged = jr.at("converged").get<bool>();
    if (jr.contains("error")) row.error = jr.at("error").get<std::string>();
    r.rows.push_back(std::move(row));
  }
  return r;
}

// CSV reader for the format written above (metadata keys it does not know
// are ignored).  Values re-read at the 12-digit format precision.
inline ScanResult from_csv(std::istream& in) {
  ScanResult r;
  std::string line;
  bool header_seen = false;
  auto parse_cell = [](const std::string& cell) -> std::optional<double> {
    if (cell.empty()) return std::nullopt;
    return std::stod(cell);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key, eq;
      ls >> key >> eq;
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      if (eq != "=") continue;  // banner line
      if (key == "axis") r.axis = rest;
      else if (key == "gamma") r.metadata.model.gamma = std::stod(rest);
      else if (key == "field_a") r.metadata.model.field_a = std::stod(rest);
      else if (key == "field_b") r.metadata.model.field_b = std::stod(rest);
      else if (key == "alpha")
        r.metadata.model.alpha = rest == "inf" ? Beta::infinite() : Beta(std::stod(rest));
      else if (key == "abs_tol") r.metadata.quadrature.abs_tol = std::stod(rest);
      else if (key == "rel_tol") r.metadata.quadrature.rel_tol = std::stod(rest);
      else if (key == "max_subdivisions")
        r.metadata.quadrature.max_subdivisions = std::stoi(rest);
      else if (key == "freq_hint") r.metadata.quadrature.freq_hint = std::stod(rest);
      else if (key == "matched_beta") r.metadata.matched_beta = std::stod(rest);
      else if (key == "t_fixed") r.metadata.t_fixed = std::stod(rest);
      else if (key == "window") {
        std::istringstream ws(rest);
        std::array<double, 3> w{};
        ws >> w[0] >> w[1] >> w[2];
        r.metadata.window = w;
      }
      continue;
    }
    if (!header_seen) {  // column header row
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    cells.resize(10);
    ScanRow row;
    row.axis_value = std::stod(cells[0]);
    const auto m = parse_cell(cells[1]);
    row.converged = m.has_value();
    if (row.converged) {
      row.correlators.m_z = *m;
      row.correlators.t_xx = *parse_cell(cells[2]);
      row.correlators.t_yy = *parse_cell(cells[3]);
      row.correlators.t_zz = *parse_cell(cells[4]);
      row.correlators.t_xy = *parse_cell(cells[5]);
      row.e_n = *parse_cell(cells[6]);
      row.energy = *parse_cell(cells[7]);
    } else {
      row.e_n = std::numeric_limits<double>::quiet_NaN();
      row.energy = std::numeric_limits<double>::quiet_NaN();
    }
    row.m_z_equilibrium = parse_cell(cells[8]);
    row.e_n_equilibrium = parse_cell(cells[9]);
    r.rows.push_back(std::move(row));
  }
  return r;
}

// Atomic write: temp file next to the target, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << data;
    if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline void save(const ScanResult& r, const std::filesystem::path& path,
                 OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_file_atomic(path, to_csv(r));
  } else {
    write_file_atomic(path, to_json(r).dump(2) + "\n");
  }
}

}  // namespace xyq
