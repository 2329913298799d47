#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifdef __unix__
#include <sys/wait.h>
#endif

#include "xyq/cli.hpp"
#include "xyq/entanglement.hpp"
#include "xyq/equilibrium.hpp"
#include "xyq/thermo.hpp"

namespace fs = std::filesystem;
using xyq::cli::Command;
using xyq::cli::RunConfig;

namespace {

struct RunCapture {
  int code = -1;
  std::string out;
  std::string err;
};

RunCapture run(const RunConfig& cfg) {
  std::ostringstream out, err;
  RunCapture r;
  r.code = xyq::cli::run(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

double kv(const std::string& text, const std::string& key) {
  const std::string needle = key + " = ";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + needle.size()));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir() {
  const fs::path dir = fs::temp_directory_path() / "xyq_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

#ifdef XYQ_CLI_PATH
// run the installed binary, capture exit code and combined output
RunCapture run_binary(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "xyq_cli_test_out.txt";
  const std::string cmd =
      std::string(XYQ_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunCapture r;
#ifdef __unix__
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
#else
  r.code = raw;
#endif
  r.out = slurp(log);
  return r;
}
#endif

}  // namespace

TEST_CASE("equilibrium command prints the library numbers") {
  RunConfig cfg;
  cfg.command = Command::equilibrium;
  cfg.beta = 4.0;
  cfg.h_field = 0.5;
  cfg.gamma = 0.5;
  const RunCapture r = run(cfg);
  REQUIRE(r.code == 0);
  const xyq::Correlators c =
      xyq::eq_correlators(xyq::Beta(4.0), 0.5, 0.5, cfg.quadrature);
  REQUIRE(kv(r.out, "m_z") == Catch::Approx(c.m_z).margin(1e-11));
  REQUIRE(kv(r.out, "t_xx") == Catch::Approx(c.t_xx).margin(1e-11));
  REQUIRE(kv(r.out, "E_N") ==
          Catch::Approx(xyq::log_negativity(xyq::assemble(c))).margin(1e-11));
}

TEST_CASE("quench point at t=0 agrees with the initial equilibrium state") {
  RunConfig qp;
  qp.command = Command::quench_point;
  qp.t = 0.0;
  const RunCapture rq = run(qp);
  REQUIRE(rq.code == 0);

  RunConfig eq;
  eq.command = Command::equilibrium;
  eq.beta = 200.0;
  eq.h_field = 0.5;
  const RunCapture re = run(eq);
  REQUIRE(re.code == 0);

  for (const char* key : {"m_z", "t_xx", "t_yy", "t_zz", "E_N"})
    REQUIRE(kv(rq.out, key) == Catch::Approx(kv(re.out, key)).margin(1e-8));
}

TEST_CASE("match-beta reports the reference effective temperature") {
  RunConfig cfg;
  cfg.command = Command::match_beta;
  const RunCapture r = run(cfg);
  REQUIRE(r.code == 0);
  REQUIRE(kv(r.out, "beta") == Catch::Approx(3.903408952634595).margin(1e-6));
  REQUIRE(std::abs(kv(r.out, "residual")) <= 1e-8);
}

TEST_CASE("invalid parameters exit with code 1") {
  RunConfig cfg;
  cfg.command = Command::equilibrium;
  cfg.gamma = 0.0;
  REQUIRE(run(cfg).code == 1);

  RunConfig bad_grid;
  bad_grid.command = Command::fig1;
  bad_grid.t_step = -1.0;
  REQUIRE(run(bad_grid).code == 1);
}

TEST_CASE("numerical failures exit with code 2") {
  RunConfig cfg;  // inverted population: no thermal state has this energy
  cfg.command = Command::match_beta;
  cfg.field_a = -5.0;
  cfg.field_b = 5.0;
  cfg.alpha = 50.0;
  const RunCapture r = run(cfg);
  REQUIRE(r.code == 2);
  REQUIRE_FALSE(r.err.empty());
}

TEST_CASE("time-series scan writes a deterministic CSV") {
  const fs::path dir = fresh_dir();
  RunConfig cfg;
  cfg.command = Command::fig1;
  cfg.t_min = 0.0;
  cfg.t_max = 0.1;
  cfg.t_step = 0.05;
  cfg.workers = 2;
  cfg.output = (dir / "a.csv").string();
  const RunCapture r1 = run(cfg);
  REQUIRE(r1.code == 0);
  REQUIRE(r1.out.find("wrote ") != std::string::npos);
  REQUIRE(r1.out.find("matched beta = ") != std::string::npos);
  cfg.output = (dir / "b.csv").string();
  cfg.workers = 1;  // parallelism must not leak into the bytes
  const RunCapture r2 = run(cfg);
  REQUIRE(r2.code == 0);
  REQUIRE(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  const std::string csv = slurp(dir / "a.csv");
  REQUIRE(csv.rfind("# xyquench", 0) == 0);
  REQUIRE(csv.find("t,M_z,T_xx,T_yy,T_zz,T_xy,E_N,energy,M_z_eq,E_N_eq") !=
          std::string::npos);
  // 3 grid points: t = 0, 0.05, 0.1
  std::istringstream lines(csv);
  std::string line;
  int data_rows = 0;
  bool header_seen = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++data_rows;
  }
  REQUIRE(data_rows == 3);
  fs::remove_all(dir);
}

TEST_CASE("JSON output is selected by extension") {
  const fs::path dir = fresh_dir();
  RunConfig cfg;
  cfg.command = Command::sweep;
  cfg.field_a = 10.0;
  cfg.beta_min = 0.5;
  cfg.beta_max = 0.6;
  cfg.beta_step = 0.1;
  cfg.t_fixed = 1.0;
  cfg.output = (dir / "sweep.json").string();
  REQUIRE(run(cfg).code == 0);
  std::ifstream in(dir / "sweep.json");
  nlohmann::json j;
  in >> j;
  REQUIRE(j["metadata"]["axis"] == "beta");
  REQUIRE(j["rows"].size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("scans with flagged rows exit with code 3 and still write output") {
  const fs::path dir = fresh_dir();
  RunConfig cfg;
  cfg.command = Command::fig1;
  cfg.t_min = 40.0;
  cfg.t_max = 40.1;
  cfg.t_step = 0.1;
  cfg.quadrature.abs_tol = 1e-300;
  cfg.quadrature.rel_tol = 1e-16;
  cfg.quadrature.max_subdivisions = 1;
  cfg.output = (dir / "partial.csv").string();
  const RunCapture r = run(cfg);
  REQUIRE(r.code == 3);
  REQUIRE(r.err.find("rows failed") != std::string::npos);
  REQUIRE(fs::exists(dir / "partial.csv"));
  fs::remove_all(dir);
}

TEST_CASE("window average of a stationary quench through the CLI") {
  RunConfig cfg;
  cfg.command = Command::average;
  cfg.field_a = 0.6;
  cfg.field_b = 0.6;
  cfg.alpha = 2.0;
  cfg.window_min = 5.0;
  cfg.window_max = 6.0;
  cfg.window_step = 0.5;
  const RunCapture r = run(cfg);
  REQUIRE(r.code == 0);
  const xyq::Correlators eq =
      xyq::eq_correlators(xyq::Beta(2.0), 0.6, 0.5, cfg.quadrature);
  REQUIRE(kv(r.out, "mean_m_z") == Catch::Approx(eq.m_z).margin(1e-6));
  REQUIRE(r.out.find("samples = 3") != std::string::npos);
}

#ifdef XYQ_CLI_PATH

TEST_CASE("binary: version and help exit cleanly") {
  REQUIRE(run_binary("--version").code == 0);
  REQUIRE(run_binary("--version").out.find("xyquench") != std::string::npos);
  REQUIRE(run_binary("--help").code == 0);
  REQUIRE(run_binary("equilibrium --help").code == 0);
}

TEST_CASE("binary: unknown flags are configuration errors") {
  REQUIRE(run_binary("equilibrium --no-such-flag 1").code == 1);
  REQUIRE(run_binary("").code == 1);  // a subcommand is required
}

TEST_CASE("binary: equilibrium point run") {
  const RunCapture r = run_binary("equilibrium --beta 4 --h-field 0.5 --gamma 0.5");
  REQUIRE(r.code == 0);
  const xyq::Correlators c = xyq::eq_correlators(xyq::Beta(4.0), 0.5, 0.5, {});
  REQUIRE(kv(r.out, "m_z") == Catch::Approx(c.m_z).margin(1e-11));
}

TEST_CASE("binary: beta accepts 'inf'") {
  const RunCapture r = run_binary("equilibrium --beta inf --h-field 0.5 --gamma 0.5");
  REQUIRE(r.code == 0);
  const xyq::Correlators c =
      xyq::eq_correlators(xyq::Beta::infinite(), 0.5, 0.5, {});
  REQUIRE(kv(r.out, "m_z") == Catch::Approx(c.m_z).margin(1e-11));
}

TEST_CASE("binary: config file applies under explicit flags") {
  const fs::path dir = fresh_dir();
  const fs::path cfg_path = dir / "run.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"gamma": 0.7, "h_field": 0.3, "beta": 2.0})";
  }
  // --h-field on the command line beats the config file; gamma and beta come
  // from the file
  const RunCapture r = run_binary("equilibrium --config " + cfg_path.string() +
                                  " --h-field 0.5");
  REQUIRE(r.code == 0);
  const xyq::Correlators c = xyq::eq_correlators(xyq::Beta(2.0), 0.5, 0.7, {});
  REQUIRE(kv(r.out, "m_z") == Catch::Approx(c.m_z).margin(1e-11));
  REQUIRE(kv(r.out, "t_xx") == Catch::Approx(c.t_xx).margin(1e-11));
  fs::remove_all(dir);
}

TEST_CASE("binary: fig2 presets yield to explicit flags") {
  const fs::path dir = fresh_dir();
  const fs::path out_path = dir / "fig2.csv";
  const RunCapture r =
      run_binary("fig2 --beta-min 0.5 --beta-max 0.6 --beta-step 0.1 --t-fixed 2 -o " +
                 out_path.string());
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out_path);
  REQUIRE(csv.find("# t_fixed = 2") != std::string::npos);   // flag kept
  REQUIRE(csv.find("# field_a = 10") != std::string::npos);  // preset applied
  fs::remove_all(dir);
}

TEST_CASE("binary: repeated runs are byte-identical") {
  const fs::path dir = fresh_dir();
  const std::string base =
      "fig1 --t-min 0 --t-max 0.1 --t-step 0.05 -o ";
  REQUIRE(run_binary(base + (dir / "r1.csv").string()).code == 0);
  REQUIRE(run_binary(base + (dir / "r2.csv").string()).code == 0);
  REQUIRE(slurp(dir / "r1.csv") == slurp(dir / "r2.csv"));
  fs::remove_all(dir);
}

#endif  // XYQ_CLI_PATH
