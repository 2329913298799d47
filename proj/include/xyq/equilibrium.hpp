#pragma once
// Observables of the thermal equilibrium state at inverse temperature beta
// and field h: the transverse magnetization M_z and the nearest-neighbor
// two-point functions G(R) from which the correlator tuple
// (T_xx, T_yy, T_zz, T_xy) is assembled, with T_jk = 4 tr(S^j x S^k rho).

#include <stdexcept>

#include "xyq/model.hpp"
#include "xyq/quadrature.hpp"

namespace xyq {

// One- and two-site expectation values of a translation-invariant state:
// m_z = <S^z> in [-1/2, 1/2]; t_jk = 4 <S^j_i S^k_{i+1}> in [-1, 1].
// Equilibrium states have t_xy = 0; evolved states generally do not.
struct Correlators {
  double m_z = 0.0;
  double t_xx = 0.0;
  double t_yy = 0.0;
  double t_zz = 0.0;
  double t_xy = 0.0;
};

// M_z = (1/2pi) Int_0^pi tanh(beta Lambda(h)/2) (h - cos phi) / Lambda(h) dphi.
inline double eq_magnetization(const Beta& beta, double h, double gamma,
                               const QuadratureSpec& spec) {
  auto f = [&](double phi) {
    const double lam = dispersion(h, gamma, phi);
    const double w = thermal_weight(beta, lam);
    return lam > 0.0 ? w * (h - std::cos(phi)) / lam : 0.0;
  };
  return require_converged(integrate(f, spec), "eq_magnetization") / (2.0 * kPi);
}

// Nearest-neighbor two-point function of the equilibrium state,
//
//   G(R) = -(gamma/pi) Int sin(R phi) sin(phi) w/Lambda dphi
//          +     (1/pi) Int cos(R phi) (cos phi - h) w/Lambda dphi,
//
// w = tanh(beta Lambda(h)/2), R = +-1.  Fixes T_xx = -G(-1), T_yy = -G(+1):
// the signs are pinned by exact diagonalization of the finite chain (see the
// oracle tests) and by the a = b reduction of the evolved-state formulas.
inline double eq_g(int r, const Beta& beta, double h, double gamma,
                   const QuadratureSpec& spec) {
  if (r != 1 && r != -1) throw std::invalid_argument("eq_g: R must be +1 or -1");
  auto f = [&, rr = static_cast<double>(r)](double phi) {
    const double lam = dispersion(h, gamma, phi);
    if (lam <= 0.0) return 0.0;
    const double w = thermal_weight(beta, lam);
    const double kernel = -gamma * std::sin(rr * phi) * std::sin(phi) +
                          std::cos(rr * phi) * (std::cos(phi) - h);
    return w * kernel / lam;
  };
  return require_converged(integrate(f, spec), "eq_g") / kPi;
}

// Full equilibrium tuple: T_xx = -G(-1), T_yy = -G(+1),
// T_zz = 4 M_z^2 - G(1) G(-1), T_xy = 0.
inline Correlators eq_correlators(const Beta& beta, double h, double gamma,
                                  const QuadratureSpec& spec) {
  Correlators c;
  c.m_z = eq_magnetization(beta, h, gamma, spec);
  const double g_plus = eq_g(1, beta, h, gamma, spec);
  const double g_minus = eq_g(-1, beta, h, gamma, spec);
  c.t_xx = -g_minus;
  c.t_yy = -g_plus;
  c.t_zz = 4.0 * c.m_z * c.m_z - g_plus * g_minus;
  c.t_xy = 0.0;
  return c;
}

}  // namespace xyq
