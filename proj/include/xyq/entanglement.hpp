#pragma once
// Two-site reduced density matrix and logarithmic negativity.
//
// The translation-invariant states here produce an X-shaped 4x4 matrix in
// the (|00>, |01>, |10>, |11>) product basis of sigma^z eigenstates: only
// the diagonal and the two anti-diagonal coherences are nonzero.  Both the
// matrix and its partial transpose split into two 2x2 blocks, so eigenvalues
// and the trace norm are closed-form.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "xyq/equilibrium.hpp"

namespace xyq {

// X-shaped Hermitian 4x4 matrix.  As a state: diagonal = populations of
// |00>, |01>, |10>, |11>; inner_coherence = <01|rho|10>; outer_coherence =
// <00|rho|11>.  The same shape holds for partial transposes, which need not
// be positive, so validity is checked by validate_state / log_negativity
// rather than enforced on construction.
struct TwoSiteState {
  std::array<double, 4> diagonal{0.0, 0.0, 0.0, 0.0};
  std::complex<double> inner_coherence{0.0, 0.0};
  std::complex<double> outer_coherence{0.0, 0.0};
};

// A correlator tuple produced a matrix too unphysical to pass off as noise
// (trace off by more than trace_tol, or an eigenvalue below -psd_tol).
class StateValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rho = 1/4 + m_z (S^z x 1 + 1 x S^z) + sum_j t_jj S^j x S^j
//       + t_xy (S^x x S^y + S^y x S^x), with S = sigma/2:
inline TwoSiteState assemble(const Correlators& c) {
  TwoSiteState s;
  s.diagonal = {0.25 + c.m_z + 0.25 * c.t_zz, 0.25 - 0.25 * c.t_zz,
                0.25 - 0.25 * c.t_zz, 0.25 - c.m_z + 0.25 * c.t_zz};
  s.inner_coherence = {0.25 * (c.t_xx + c.t_yy), 0.0};
  s.outer_coherence = {0.25 * (c.t_xx - c.t_yy), -0.5 * c.t_xy};
  return s;
}

// Eigenvalues of an X matrix: the (|00>, |11>) corner block carries the
// outer coherence, the (|01>, |10>) center block the inner one; each block
// contributes (p+q)/2 +- sqrt((p-q)^2/4 + |c|^2).
inline std::array<double, 4> x_eigenvalues(const TwoSiteState& m) {
  auto block = [](double p, double q, const std::complex<double>& c) {
    const double avg = 0.5 * (p + q);
    const double dev = std::hypot(0.5 * (p - q), std::abs(c));
    return std::array<double, 2>{avg - dev, avg + dev};
  };
  const auto corner = block(m.diagonal[0], m.diagonal[3], m.outer_coherence);
  const auto center = block(m.diagonal[1], m.diagonal[2], m.inner_coherence);
  return {corner[0], corner[1], center[0], center[1]};
}

inline double trace_of(const TwoSiteState& m) {
  return m.diagonal[0] + m.diagonal[1] + m.diagonal[2] + m.diagonal[3];
}

inline void validate_state(const TwoSiteState& s, double trace_tol = 1e-12,
                           double psd_tol = 1e-9) {
  if (std::abs(trace_of(s) - 1.0) > trace_tol)
    throw StateValidationError("two-site state: trace deviates from 1 by " +
                               std::to_string(trace_of(s) - 1.0));
  for (double ev : x_eigenvalues(s))
    if (ev < -psd_tol)
      throw StateValidationError("two-site state: negative eigenvalue " +
                                 std::to_string(ev) + " beyond tolerance");
}

// Partial transpose on the first site in the sigma^z product basis:
// <ij|rho^T_A|kl> = <kj|rho|il>.  Diagonal unchanged; the two coherences
// trade places with conjugation.  E_N is the same for either site.
inline TwoSiteState partial_transpose(const TwoSiteState& s) {
  TwoSiteState t = s;
  t.inner_coherence = std::conj(s.outer_coherence);
  t.outer_coherence = std::conj(s.inner_coherence);
  return t;
}

// Trace norm (sum of |eigenvalue|) of an X-shaped Hermitian matrix.
inline double trace_norm(const TwoSiteState& m) {
  double sum = 0.0;
  for (double ev : x_eigenvalues(m)) sum += std::abs(ev);
  return sum;
}

// E_N = log2 ||rho^T_A||_1, clamped to 0 when the trace norm is 1 up to
// rounding (PPT, hence separable for two qubits).
inline double log_negativity(const TwoSiteState& rho) {
  validate_state(rho);
  const double tn = trace_norm(partial_transpose(rho));
  if (tn <= 1.0 + 1e-12) return 0.0;
  return std::log2(tn);
}

// Dense row-major 4x4 representation, mainly for tests and round-trips.
inline std::array<std::complex<double>, 16> dense(const TwoSiteState& s) {
  std::array<std::complex<double>, 16> m{};
  m[0 * 4 + 0] = s.diagonal[0];
  m[1 * 4 + 1] = s.diagonal[1];
  m[2 * 4 + 2] = s.diagonal[2];
  m[3 * 4 + 3] = s.diagonal[3];
  m[1 * 4 + 2] = s.inner_coherence;
  m[2 * 4 + 1] = std::conj(s.inner_coherence);
  m[0 * 4 + 3] = s.outer_coherence;
  m[3 * 4 + 0] = std::conj(s.outer_coherence);
  return m;
}

}  // namespace xyq
