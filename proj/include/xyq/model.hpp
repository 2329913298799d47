#pragma once
// Parameters and single-particle dispersion of the transverse-field XY chain
//
//   H(h) = sum_i [ (1+gamma) Sx_i Sx_{i+1} + (1-gamma) Sy_i Sy_{i+1} - h Sz_i ],
//
// with S = sigma/2 and periodic boundaries.  The field is switched suddenly
// from h=a (t <= 0) to h=b (t > 0); the pre-quench state is thermal at inverse
// temperature alpha.  Units: k = 1, hbar = 1, all quantities dimensionless.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace xyq {

inline constexpr double kPi = std::numbers::pi;

// Inverse temperature.  The ground state (beta = infinity) is a first-class
// value rather than a large float, so the thermal weight tanh(beta*lambda/2)
// is exact in that limit instead of relying on tanh saturation.
class Beta {
 public:
  Beta() = default;  // finite, beta = 1
  Beta(double value) {  // NOLINT: implicit by design, beta params accept doubles
    if (std::isnan(value) || value <= 0.0)
      throw std::invalid_argument("Beta: inverse temperature must be > 0 (got " +
                                  std::to_string(value) + ")");
    if (std::isinf(value)) {
      infinite_ = true;
      value_ = 0.0;
    } else {
      value_ = value;
    }
  }

  static Beta infinite() {
    Beta b;
    b.infinite_ = true;
    b.value_ = 0.0;
    return b;
  }

  bool is_infinite() const { return infinite_; }

  // Finite value; throws for the ground-state case so a forgotten
  // is_infinite() check cannot silently produce beta = 0.
  double value() const {
    if (infinite_) throw std::logic_error("Beta::value() on infinite beta");
    return value_;
  }

  // For serialization: +inf for the ground state.
  double value_or_infinity() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend bool operator==(const Beta& x, const Beta& y) {
    return x.infinite_ == y.infinite_ && x.value_ == y.value_;
  }

 private:
  double value_ = 1.0;
  bool infinite_ = false;
};

// tanh(beta*lambda/2); 1 (lambda > 0) or 0 (lambda = 0) at beta = infinity.
// Monotone nondecreasing in both arguments, range [0, 1] for lambda >= 0.
inline double thermal_weight(const Beta& beta, double lambda) {
  if (beta.is_infinite()) return lambda > 0.0 ? 1.0 : 0.0;
  return std::tanh(0.5 * beta.value() * lambda);
}

// Lambda(h, phi) = sqrt(gamma^2 sin^2 phi + (h - cos phi)^2), phi in [0, pi].
// Vanishes only at the critical fields h = +-1 (phi = 0 or pi).
inline double dispersion(double h, double gamma, double phi) {
  if (!(phi >= 0.0 && phi <= kPi))
    throw std::domain_error("dispersion: phi must lie in [0, pi] (got " +
                            std::to_string(phi) + ")");
  const double gs = gamma * std::sin(phi);
  const double d = h - std::cos(phi);
  return std::sqrt(gs * gs + d * d);
}

// sup over phi in [0, pi] of Lambda(h, phi); used to size oscillatory
// quadrature panels (the integrands oscillate as cos/sin(2 Lambda(b) t)).
// With x = cos phi, Lambda^2 = (1 - gamma^2) x^2 - 2 h x + gamma^2 + h^2 is
// quadratic in x on [-1, 1]: the maximum is at an endpoint, or at the vertex
// x* = h / (1 - gamma^2) when gamma^2 > 1 puts the parabola opening downward.
inline double sup_dispersion(double h, double gamma) {
  const double g2 = gamma * gamma;
  const double q = 1.0 - g2;
  // endpoints x = +-1 (the gamma term vanishes there)
  double m2 = std::max((1.0 - h) * (1.0 - h), (1.0 + h) * (1.0 + h));
  if (q < 0.0) {
    const double x = h / q;
    if (x >= -1.0 && x <= 1.0) m2 = std::max(m2, q * x * x - 2.0 * h * x + g2 + h * h);
  }
  return std::sqrt(m2);
}

// Physical parameter set of one quench experiment.
struct ModelParams {
  double gamma = 0.5;   // anisotropy; gamma = 0 makes the field trivial and is rejected
  double field_a = 0.5; // pre-quench transverse field (t <= 0)
  double field_b = 0.0; // post-quench transverse field (t > 0)
  Beta alpha{1.0};      // initial inverse temperature

  void validate() const {
    if (!std::isfinite(gamma) || gamma == 0.0)
      throw std::invalid_argument("ModelParams: gamma must be finite and nonzero");
    if (!std::isfinite(field_a))
      throw std::invalid_argument("ModelParams: field_a must be finite");
    if (!std::isfinite(field_b))
      throw std::invalid_argument("ModelParams: field_b must be finite");
    // alpha validated on construction of Beta
  }

  // Non-fatal warnings for parameter regions with documented caveats.
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (std::abs(std::abs(gamma) - 1.0) < 1e-6)
      w.push_back("gamma = 1: persistent revivals, time averages do not converge");
    if (std::abs(std::abs(field_b) - 1.0) <= 1e-3)
      w.push_back("post-quench field near the critical value |b| = 1: "
                  "the gap closes and quadrature converges slowly");
    return w;
  }
};

// Controls for the adaptive quadrature over [0, pi].
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4096;  // panel splits allowed after the initial grid
  double freq_hint = 0.0;       // ~ 2 * t * sup_phi Lambda(b); sizes the initial grid

  void validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
      throw std::invalid_argument("QuadratureSpec: tolerances must be >= 0");
    if (abs_tol == 0.0 && rel_tol == 0.0)
      throw std::invalid_argument("QuadratureSpec: at least one tolerance must be > 0");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(freq_hint >= 0.0))
      throw std::invalid_argument("QuadratureSpec: freq_hint must be >= 0");
  }
};

}  // namespace xyq
