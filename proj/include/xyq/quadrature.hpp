#pragma once
// Adaptive integration over [0, pi].
//
// Panels are evaluated with the embedded 7-point Gauss / 15-point Kronrod
// pair; the panel with the largest error estimate is split until the global
// estimate meets max(abs_tol, rel_tol*|value|) or the subdivision budget is
// exhausted.  Oscillatory integrands (factors cos/sin(2 Lambda(b) t)) are
// handled by pre-splitting the interval into ~max_freq panels so each spans
// less than half an oscillation period; adaptivity does the rest.
//
// Deterministic by construction: fixed nodes, a fixed worst-panel-first
// subdivision order with ties broken by panel age, and a final re-summation
// of surviving panels in left-to-right order.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "xyq/model.hpp"

namespace xyq {

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

// Raised by consumers (equilibrium/quench/thermo/scan) when a quadrature
// result they depend on did not converge.  integrate() itself never throws
// for non-convergence; it reports converged = false with its best estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, IntegrationResult r)
      : std::runtime_error(what), result(r) {}
  IntegrationResult result;
};

inline double require_converged(const IntegrationResult& r, const char* context) {
  if (!r.converged)
    throw ConvergenceError(std::string(context) + ": quadrature did not converge (error estimate " +
                               std::to_string(r.error_estimate) + " after " +
                               std::to_string(r.evaluations) + " evaluations)",
                           r);
  return r.value;
}

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (positive half; the rule is symmetric)
// and weights; odd indices are the embedded 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.99145537112081264, 0.94910791234275852, 0.86486442335976907, 0.74153118559939444,
    0.58608723546769113, 0.40584515137739717, 0.20778495500789847, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018, 0.14065325971552592,
    0.16900472663926790, 0.19035057806478559, 0.20443294007529889, 0.20948214108472783};
inline constexpr std::array<double, 4> kWg = {
    0.12948496616886969, 0.27970539148927664, 0.38183005050511894, 0.41795918367346939};

struct Panel {
  double lo, hi;
  double value;   // Kronrod estimate of the panel integral
  double error;   // QUADPACK-style error estimate
};

// One Gauss-Kronrod evaluation on [lo, hi] (15 integrand calls).
template <class F>
Panel eval_panel(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double hl = 0.5 * (hi - lo);

  const double fc = f(center);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  std::array<double, 7> f_lo, f_hi;
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kXgk[j];
    f_lo[j] = f(center - dx);
    f_hi[j] = f(center + dx);
    const double sum = f_lo[j] + f_hi[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * sum;
  }

  // Scale of the mean-removed integrand, used to damp the raw |K15-G7|
  // difference the way QUADPACK does (raw differences grossly overestimate
  // the true error once the rule is nearly exact).
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f_lo[j] - reskh) + std::abs(f_hi[j] - reskh));

  resabs *= hl;
  resasc *= hl;
  double err = std::abs(resk - resg) * hl;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

  return Panel{lo, hi, resk * hl, err};
}

template <class F>
IntegrationResult integrate_panels(F&& f, const QuadratureSpec& spec, double freq) {
  spec.validate();

  // Initial grid: at least ceil(freq) panels so each spans under half an
  // oscillation period (phase 2*Lambda*t advances by <= pi per panel).
  const double capped = std::min(std::max(freq, 0.0), 1048576.0);
  const int n0 = std::max(1, static_cast<int>(std::ceil(capped)));

  std::vector<Panel> arena;
  arena.reserve(static_cast<std::size_t>(n0) + 2 * static_cast<std::size_t>(spec.max_subdivisions));
  std::vector<char> alive;
  alive.reserve(arena.capacity());

  struct HeapEntry {
    double error;
    std::uint32_t idx;
    bool operator<(const HeapEntry& o) const {
      // priority_queue pops the largest; prefer bigger error, then older panel
      if (error != o.error) return error < o.error;
      return idx > o.idx;
    }
  };
  std::priority_queue<HeapEntry> heap;

  std::int64_t evaluations = 0;
  for (int i = 0; i < n0; ++i) {
    const double lo = kPi * static_cast<double>(i) / n0;
    const double hi = (i + 1 == n0) ? kPi : kPi * static_cast<double>(i + 1) / n0;
    arena.push_back(eval_panel(f, lo, hi));
    alive.push_back(1);
    evaluations += 15;
    heap.push({arena.back().error, static_cast<std::uint32_t>(arena.size() - 1)});
  }

  double total_value = 0.0, total_error = 0.0;
  for (const Panel& p : arena) {
    total_value += p.value;
    total_error += p.error;
  }

  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * kPi;
  int splits = 0;
  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
    if (splits >= spec.max_subdivisions || heap.empty()) break;
    const HeapEntry top = heap.top();
    heap.pop();
    const Panel parent = arena[top.idx];
    if (parent.hi - parent.lo <= min_width) continue;  // cannot refine further

    const double mid = 0.5 * (parent.lo + parent.hi);
    alive[top.idx] = 0;
    ++splits;
    for (const auto& child : {eval_panel(f, parent.lo, mid), eval_panel(f, mid, parent.hi)}) {
      arena.push_back(child);
      alive.push_back(1);
      heap.push({child.error, static_cast<std::uint32_t>(arena.size() - 1)});
      total_value += child.value;
      total_error += child.error;
    }
    evaluations += 30;
    total_value -= parent.value;
    total_error -= parent.error;
  }

  // Deterministic final answer: re-sum surviving panels left to right (the
  // incremental totals above only steer subdivision).
  std::vector<std::uint32_t> live;
  live.reserve(arena.size());
  for (std::uint32_t i = 0; i < arena.size(); ++i)
    if (alive[i]) live.push_back(i);
  std::sort(live.begin(), live.end(),
            [&](std::uint32_t x, std::uint32_t y) { return arena[x].lo < arena[y].lo; });
  IntegrationResult out;
  out.evaluations = evaluations;
  for (std::uint32_t i : live) {
    out.value += arena[i].value;
    out.error_estimate += arena[i].error;
  }
  out.converged =
      out.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
  return out;
}

}  // namespace detail

// integral of f over [0, pi]; spec.freq_hint sizes the initial grid.
template <class F>
IntegrationResult integrate(F&& f, const QuadratureSpec& spec) {
  return detail::integrate_panels(std::forward<F>(f), spec, spec.freq_hint);
}

// Same contract for integrands oscillating like cos/sin(2 Lambda(b) t);
// the caller supplies max_freq = 2 * t * sup_phi Lambda(b).  At t = 0 (or
// max_freq = 0) this reduces exactly to integrate().
template <class F>
IntegrationResult integrate_oscillatory(F&& f, const QuadratureSpec& spec, double time,
                                        double max_freq) {
  if (!(time >= 0.0))
    throw std::invalid_argument("integrate_oscillatory: time must be >= 0");
  if (!(max_freq >= 0.0))
    throw std::invalid_argument("integrate_oscillatory: max_freq must be >= 0");
  return detail::integrate_panels(std::forward<F>(f), spec,
                                  std::max(spec.freq_hint, max_freq));
}

}  // namespace xyq
