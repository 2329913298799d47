// Acceptance gate: one check per release criterion, each printed as a
// PASS/FAIL line with the measured value next to its target.  Exits nonzero
// if any check fails.  Criteria 1, 2 and 5 also carry wall-clock budgets.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "../tests/support/ed_oracle.hpp"
#include "../tests/support/oracles.hpp"
#include "xyq/xyq.hpp"

namespace {

bool g_all_ok = true;

void report(int idx, bool ok, const std::string& name, const std::string& detail) {
  std::printf("[%2d] %s %s: %s\n", idx, ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) g_all_ok = false;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

xyq::ModelParams reference_quench() {
  xyq::ModelParams p;
  p.gamma = 0.5;
  p.field_a = 0.5;
  p.field_b = 0.0;
  p.alpha = xyq::Beta(200.0);
  return p;
}

}  // namespace

int main() {
  const xyq::QuadratureSpec spec;
  const unsigned workers = xyq::default_workers();
  const xyq::ModelParams ref = reference_quench();

  // --- 1: initial magnetization, budget 1 s ---------------------------------
  {
    const double t0 = now_seconds();
    const double m = xyq::quench_magnetization(ref, 0.0, spec);
    const double dt = now_seconds() - t0;
    const bool ok = std::abs(m - 0.148328) <= 1e-3 && dt < 1.0;
    report(1, ok, "initial magnetization",
           "M_z(0) = " + fmt(m) + " (target 0.148328 +/- 1e-3), " + fmt(dt) + " s (< 1 s)");
  }

  // --- 2: energy-matched inverse temperature, budget 10 s -------------------
  double matched_beta = 0.0;
  {
    const double t0 = now_seconds();
    const xyq::BetaMatch m = xyq::match_beta(ref, spec);
    const double dt = now_seconds() - t0;
    matched_beta = m.beta.value();
    const bool ok = std::abs(matched_beta - 3.9) <= 0.1 && dt < 10.0;
    report(2, ok, "energy-matched temperature",
           "beta = " + fmt(matched_beta) + " (target 3.9 +/- 0.1), " + fmt(dt) +
               " s (< 10 s)");
  }

  // --- 3: equilibrium negativity on both sides of the quench ----------------
  {
    const xyq::Correlators before =
        xyq::eq_correlators(xyq::Beta(200.0), 0.5, 0.5, spec);
    const double en_before = xyq::log_negativity(xyq::assemble(before));
    const xyq::Correlators after =
        xyq::eq_correlators(xyq::Beta(matched_beta), 0.0, 0.5, spec);
    const double en_after = xyq::log_negativity(xyq::assemble(after));
    const bool ok =
        std::abs(en_before - 0.132635) <= 1e-3 && std::abs(en_after - 0.157188) <= 2e-3;
    report(3, ok, "equilibrium negativity jump",
           "E_N(beta=200, h=0.5) = " + fmt(en_before) +
               " (target 0.132635 +/- 1e-3); E_N(matched beta, h=0) = " + fmt(en_after) +
               " (target 0.157188 +/- 2e-3)");
  }

  // --- 4: equilibrium magnetization vanishes at h = 0 -----------------------
  {
    double worst = 0.0;
    for (const double beta : {0.3, 1.0, 5.0, 50.0}) {
      worst = std::max(
          worst, std::abs(xyq::eq_magnetization(xyq::Beta(beta), 0.0, 0.5, spec)));
    }
    worst = std::max(
        worst, std::abs(xyq::eq_magnetization(xyq::Beta::infinite(), 0.0, 0.5, spec)));
    const bool ok = worst <= 1e-10;
    report(4, ok, "magnetization collapse at h=0",
           "max |M_z^eq| over beta grid = " + fmt(worst) + " (<= 1e-10)");
  }

  // --- 5: nonergodicity gap over the [20,100] window, budget 5 min ----------
  {
    const double t0 = now_seconds();
    const xyq::WindowAverage avg =
        xyq::long_time_average(ref, 20.0, 100.0, 0.1, spec, workers);
    const double dt = now_seconds() - t0;
    const double en_eq = 0.157188;  // matched-state negativity (criterion 3)
    const double mz_eq = 0.0;       // matched-state magnetization (criterion 4)
    const bool in_band = std::abs(avg.mean_m_z - 0.02) <= 0.01 &&
                         std::abs(avg.mean_e_n - 0.18) <= 0.015;
    // "differs by more than 3x the stated tolerance" with the point-value
    // tolerances of criteria 1 and 3 (1e-3 and 2e-3)
    const bool separated = std::abs(avg.mean_m_z - mz_eq) > 3e-3 &&
                           std::abs(avg.mean_e_n - en_eq) > 6e-3;
    const bool ok = in_band && separated && dt < 300.0;
    report(5, ok, "nonergodicity gap",
           "<M_z> = " + fmt(avg.mean_m_z) + " (0.02 +/- 0.01, vs eq 0), <E_N> = " +
               fmt(avg.mean_e_n) + " (0.18 +/- 0.015, vs eq 0.157188), " + fmt(dt) +
               " s (< 300 s)");
  }

  // --- 6: t=0 identity suite over randomized parameters ---------------------
  {
    oracle::SplitMix64 rng(0x5eedc0ffee101ULL);
    double worst = 0.0;
    std::string worst_what = "none";
    for (int trial = 0; trial < 20; ++trial) {
      xyq::ModelParams p;
      p.gamma = rng.uniform(0.2, 0.9);
      p.field_a = rng.uniform(-0.9, 0.9);
      p.field_b = rng.uniform(-0.9, 0.9);
      p.alpha = xyq::Beta(rng.uniform(1.0, 200.0));
      const xyq::Correlators q = xyq::quench_correlators(p, 0.0, spec);
      const xyq::Correlators e = xyq::eq_correlators(p.alpha, p.field_a, p.gamma, spec);
      const double en_q = xyq::log_negativity(xyq::assemble(q));
      const double en_e = xyq::log_negativity(xyq::assemble(e));
      const double energy_q = xyq::quench_energy(p, 0.0, spec);
      const double energy_e = xyq::energy_of(e, p.field_b, p.gamma);
      const struct {
        const char* what;
        double delta;
      } deltas[] = {
          {"m_z", std::abs(q.m_z - e.m_z)},       {"t_xx", std::abs(q.t_xx - e.t_xx)},
          {"t_yy", std::abs(q.t_yy - e.t_yy)},    {"t_zz", std::abs(q.t_zz - e.t_zz)},
          {"t_xy", std::abs(q.t_xy - e.t_xy)},    {"E_N", std::abs(en_q - en_e)},
          {"energy", std::abs(energy_q - energy_e)},
      };
      for (const auto& d : deltas) {
        if (d.delta > worst) {
          worst = d.delta;
          worst_what = d.what;
        }
      }
    }
    const bool ok = worst <= 1e-8;
    report(6, ok, "t=0 identity suite",
           "worst |quench - equilibrium| = " + fmt(worst) + " (" + worst_what +
               ") over 20 random sets (<= 1e-8)");
  }

  // --- 7: conservation and reduction properties -----------------------------
  {
    // (a) energy conservation over 50 points
    std::vector<double> energies;
    for (int k = 0; k < 50; ++k)
      energies.push_back(xyq::quench_energy(ref, 0.2 * (k + 1), spec));
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= static_cast<double>(energies.size());
    double var = 0.0;
    for (double e : energies) var += (e - mean) * (e - mean);
    const double sigma = std::sqrt(var / static_cast<double>(energies.size()));

    // (b) a trivial quench is stationary
    xyq::ModelParams same;
    same.gamma = 0.6;
    same.field_a = 0.4;
    same.field_b = 0.4;
    same.alpha = xyq::Beta(1.5);
    const xyq::Correlators eq = xyq::eq_correlators(same.alpha, 0.4, 0.6, spec);
    double reduction = 0.0;
    for (const double t : {0.9, 13.0}) {
      const xyq::Correlators q = xyq::quench_correlators(same, t, spec);
      reduction = std::max({reduction, std::abs(q.m_z - eq.m_z), std::abs(q.t_xx - eq.t_xx),
                            std::abs(q.t_yy - eq.t_yy), std::abs(q.t_zz - eq.t_zz),
                            std::abs(q.t_xy)});
    }

    // (c) the mixed correlator vanishes identically at t = 0
    const bool s_zero = xyq::quench_s(1, ref, 0.0, spec) == 0.0 &&
                        xyq::quench_s(-1, ref, 0.0, spec) == 0.0;

    // (d) infinite temperature gives the maximally mixed pair with E_N = 0
    const xyq::Correlators hot = xyq::eq_correlators(xyq::Beta(1e-6), 0.5, 0.5, spec);
    const xyq::TwoSiteState hot_state = xyq::assemble(hot);
    double mixed_dev = 0.0;
    for (double d : hot_state.diagonal) mixed_dev = std::max(mixed_dev, std::abs(d - 0.25));
    const bool hot_ok = xyq::log_negativity(hot_state) == 0.0 && mixed_dev < 1e-6;

    const bool ok = sigma < 1e-6 && reduction <= 1e-10 && s_zero && hot_ok;
    report(7, ok, "conservation and reductions",
           "energy sigma = " + fmt(sigma) + " (< 1e-6); stationary-quench residual = " +
               fmt(reduction) + " (<= 1e-10); S(R,0) == 0: " + (s_zero ? "yes" : "no") +
               "; beta->0 mixed-state deviation = " + fmt(mixed_dev) + " with E_N = 0: " +
               (hot_ok ? "yes" : "no"));
  }

  // --- 8: N=14 exact-diagonalization oracle ---------------------------------
  {
    const struct {
      double beta, h, g;
    } sets[] = {
        {1.0, 0.5, 0.5}, {1.2, 0.0, 0.5}, {1.5, -0.3, 0.7}, {0.8, 0.8, 0.3}, {1.0, 0.6, 0.9},
    };
    double worst = 0.0;
    std::string worst_at = "none";
    for (const auto& s : sets) {
      const oracle::EdObservables ed = oracle::parity_thermal_ed(14, s.beta, s.h, s.g);
      const xyq::Correlators c = xyq::eq_correlators(xyq::Beta(s.beta), s.h, s.g, spec);
      const double e = xyq::energy_of(c, s.h, s.g);
      const struct {
        const char* what;
        double delta;
      } deltas[] = {{"m_z", std::abs(c.m_z - ed.m_z)},
                    {"t_xx", std::abs(c.t_xx - ed.t_xx)},
                    {"t_yy", std::abs(c.t_yy - ed.t_yy)},
                    {"t_zz", std::abs(c.t_zz - ed.t_zz)},
                    {"energy", std::abs(e - ed.energy)}};
      for (const auto& d : deltas) {
        if (d.delta > worst) {
          worst = d.delta;
          char buf[96];
          std::snprintf(buf, sizeof buf, "%s at beta=%g h=%g gamma=%g", d.what, s.beta,
                        s.h, s.g);
          worst_at = buf;
        }
      }
      std::printf("     ... N=14 set beta=%g h=%g gamma=%g done\n", s.beta, s.h, s.g);
      std::fflush(stdout);
    }
    const bool ok = worst <= 1e-3;
    report(8, ok, "N=14 diagonalization oracle",
           "worst |formula - ED| = " + fmt(worst) + " (" + worst_at +
               ") over 5 sets (<= 1e-3)");
  }

  // --- 9: entanglement kernel vs dense eigensolver --------------------------
  {
    oracle::SplitMix64 rng(0xabcdef0123456789ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      xyq::TwoSiteState s;
      double sum = 0.0;
      for (double& d : s.diagonal) {
        d = rng.uniform(1e-3, 1.0);
        sum += d;
      }
      for (double& d : s.diagonal) d /= sum;
      s.inner_coherence = std::polar(
          rng.uniform(0.0, 1.0) * std::sqrt(s.diagonal[1] * s.diagonal[2]),
          rng.uniform(0.0, 2.0 * xyq::kPi));
      s.outer_coherence = std::polar(
          rng.uniform(0.0, 1.0) * std::sqrt(s.diagonal[0] * s.diagonal[3]),
          rng.uniform(0.0, 2.0 * xyq::kPi));
      const xyq::TwoSiteState pt = xyq::partial_transpose(s);
      const double closed = xyq::trace_norm(pt);
      worst = std::max(worst, std::abs(closed - oracle::trace_norm_dense(xyq::dense(pt))));
    }
    xyq::TwoSiteState singlet;
    singlet.diagonal = {0.0, 0.5, 0.5, 0.0};
    singlet.inner_coherence = -0.5;
    const double ln_singlet = xyq::log_negativity(singlet);
    xyq::TwoSiteState mixed;
    mixed.diagonal = {0.25, 0.25, 0.25, 0.25};
    const double ln_mixed = xyq::log_negativity(mixed);
    const bool ok =
        worst <= 1e-12 && std::abs(ln_singlet - 1.0) <= 1e-12 && ln_mixed == 0.0;
    report(9, ok, "entanglement kernel",
           "worst trace-norm deviation = " + fmt(worst) +
               " over 10^4 X states (<= 1e-12); singlet LN = " + fmt(ln_singlet) +
               "; mixed LN = " + fmt(ln_mixed));
  }

  // --- 10: initial-temperature sweep properties -----------------------------
  {
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i) grid.push_back(0.05 + 0.05 * i);
    const xyq::ScanResult sweep =
        xyq::temperature_sweep(0.5, 10.0, 0.0, 1.0, grid, spec, workers);
    bool zero_when_hot = true;
    for (const xyq::ScanRow& row : sweep.rows)
      if (row.axis_value <= 0.1 + 1e-12 && row.e_n != 0.0) zero_when_hot = false;
    bool monotone = true;
    double prev_en = -1.0, prev_mz = -1e9;
    for (const xyq::ScanRow& row : sweep.rows) {
      if (row.e_n < prev_en - 1e-12 || row.correlators.m_z < prev_mz - 1e-12)
        monotone = false;
      prev_en = row.e_n;
      prev_mz = row.correlators.m_z;
    }
    const xyq::ScanRow& last = sweep.rows.back();          // beta = 2.00
    const xyq::ScanRow& prev = sweep.rows[sweep.rows.size() - 5];  // beta = 1.80
    const double sat_en = std::abs(last.e_n - prev.e_n);
    const double sat_mz = std::abs(last.correlators.m_z - prev.correlators.m_z);
    const bool ok = zero_when_hot && monotone && sat_en < 0.01 && sat_mz < 0.01;
    report(10, ok, "temperature-sweep shape",
           std::string("E_N = 0 for beta <= 0.1: ") + (zero_when_hot ? "yes" : "no") +
               "; curves nondecreasing: " + (monotone ? "yes" : "no") +
               "; |f(2.0)-f(1.8)| = " + fmt(sat_mz) + " (M_z), " + fmt(sat_en) +
               " (E_N) (< 0.01)");
  }

  std::printf("%s\n", g_all_ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return g_all_ok ? 0 : 1;
}
