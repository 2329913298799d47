#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "xyq/model.hpp"
#include "xyq/quadrature.hpp"

using xyq::IntegrationResult;
using xyq::QuadratureSpec;

TEST_CASE("exact elementary integrals on [0, pi]") {
  QuadratureSpec spec;
  const IntegrationResult s = xyq::integrate([](double p) { return std::sin(p); }, spec);
  REQUIRE(s.converged);
  REQUIRE(s.value == Catch::Approx(2.0).epsilon(1e-13));
  REQUIRE(s.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(s.value)));
  REQUIRE(s.evaluations >= 15);

  const IntegrationResult c = xyq::integrate([](double p) { return std::cos(p); }, spec);
  REQUIRE(c.converged);
  REQUIRE(c.value == Catch::Approx(0.0).margin(1e-13));

  // a Gauss-Kronrod panel integrates low-degree polynomials exactly,
  // so the initial single panel already converges
  const IntegrationResult poly =
      xyq::integrate([](double p) { return p * p * p - 2.0 * p; }, spec);
  REQUIRE(poly.converged);
  const double exact = std::pow(xyq::kPi, 4) / 4.0 - xyq::kPi * xyq::kPi;
  REQUIRE(poly.value == Catch::Approx(exact).epsilon(1e-14));
  REQUIRE(poly.evaluations == 15);
}

TEST_CASE("oscillatory integral matches a frozen high-resolution Simpson value") {
  // integrand cos(2 t Lambda(h=0, gamma=0.5, phi)) sin^2(phi) at t = 50;
  // reference from a 10^6-interval composite Simpson rule
  const double t = 50.0;
  auto f = [&](double p) {
    const double lam = xyq::dispersion(0.0, 0.5, p);
    return std::cos(2.0 * t * lam) * std::sin(p) * std::sin(p);
  };
  QuadratureSpec spec;
  const double max_freq = 2.0 * t * xyq::sup_dispersion(0.0, 0.5);
  const IntegrationResult r = xyq::integrate_oscillatory(f, spec, t, max_freq);
  REQUIRE(r.converged);
  REQUIRE(r.value == Catch::Approx(0.173495286364039).margin(1e-8));
  // and against a live Simpson evaluation with an independent error profile
  REQUIRE(r.value == Catch::Approx(oracle::simpson_0_pi(f, 400000)).margin(1e-9));
}

TEST_CASE("constant-dispersion oscillation reduces to pi*cos(2t)") {
  // if Lambda is constant the integrand is a constant: a frequency hint may
  // add panels but must not change the value
  const double t = 10.0;
  QuadratureSpec spec;
  const IntegrationResult r =
      xyq::integrate_oscillatory([&](double) { return std::cos(2.0 * t); }, spec, t, 2.0 * t);
  REQUIRE(r.converged);
  REQUIRE(r.value == Catch::Approx(xyq::kPi * std::cos(20.0)).epsilon(1e-13));
  REQUIRE(r.evaluations >= 15 * 20);  // initial panel count follows the frequency
}

TEST_CASE("spec-level frequency hint forces initial panels") {
  QuadratureSpec spec;
  spec.freq_hint = 8.0;
  const IntegrationResult r = xyq::integrate([](double p) { return std::sin(p); }, spec);
  REQUIRE(r.converged);
  REQUIRE(r.value == Catch::Approx(2.0).epsilon(1e-13));
  REQUIRE(r.evaluations >= 15 * 8);
}

TEST_CASE("integration is linear within reported error estimates") {
  QuadratureSpec spec;
  auto f = [](double p) { return std::sin(3.0 * p) * std::exp(-0.2 * p); };
  auto g = [](double p) { return std::cos(5.0 * p) / (1.5 + std::sin(p)); };
  const IntegrationResult rf = xyq::integrate(f, spec);
  const IntegrationResult rg = xyq::integrate(g, spec);
  const IntegrationResult rfg = xyq::integrate([&](double p) { return f(p) + g(p); }, spec);
  REQUIRE(rf.converged);
  REQUIRE(rg.converged);
  REQUIRE(rfg.converged);
  const double slack =
      2.0 * (rf.error_estimate + rg.error_estimate + rfg.error_estimate) + 1e-12;
  REQUIRE(std::abs(rf.value + rg.value - rfg.value) <= slack);
}

TEST_CASE("tightening the tolerance never loosens the result") {
  auto f = [](double p) {
    const double lam = xyq::dispersion(0.3, 0.7, p);
    return std::cos(2.0 * 20.0 * lam) * std::sin(p) / (lam + 0.1);
  };
  QuadratureSpec loose;
  loose.abs_tol = 1e-6;
  loose.rel_tol = 1e-4;
  QuadratureSpec tight;
  tight.abs_tol = 1e-12;
  tight.rel_tol = 1e-10;
  const double max_freq = 40.0 * xyq::sup_dispersion(0.3, 0.7);
  const IntegrationResult rl = xyq::integrate_oscillatory(f, loose, 20.0, max_freq);
  const IntegrationResult rt = xyq::integrate_oscillatory(f, tight, 20.0, max_freq);
  REQUIRE(rl.converged);
  REQUIRE(rt.converged);
  REQUIRE(rt.error_estimate <= rl.error_estimate);
  REQUIRE(rt.evaluations >= rl.evaluations);
  REQUIRE(std::abs(rl.value - rt.value) <= rl.error_estimate + rt.error_estimate + 1e-13);
}

TEST_CASE("convergence across the quench parameter grid") {
  // the integrands the library actually evaluates: oscillation frequency
  // 2 t Lambda_b, amplitude shaped by 1/(Lambda_a Lambda_b^2)
  QuadratureSpec spec;
  for (const double g : {0.1, 0.5, 1.0}) {
    for (const double b : {-0.9, 0.0, 0.9}) {
      for (const double t : {1.0, 50.0, 200.0}) {
        auto f = [&](double p) {
          const double la = xyq::dispersion(0.5, g, p);
          const double lb = xyq::dispersion(b, g, p);
          const double den = std::max(la * lb * lb, 1e-300);
          return std::cos(2.0 * t * lb) * g * g * std::sin(p) * std::sin(p) / den;
        };
        const double max_freq = 2.0 * t * xyq::sup_dispersion(b, g);
        const IntegrationResult r = xyq::integrate_oscillatory(f, spec, t, max_freq);
        INFO("gamma=" << g << " b=" << b << " t=" << t);
        REQUIRE(r.converged);
        REQUIRE(r.error_estimate <=
                std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)));
      }
    }
  }
}

TEST_CASE("exhausted subdivision budget reports failure with a partial result") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-300;  // unreachable
  spec.rel_tol = 1e-16;
  spec.max_subdivisions = 4;
  auto f = [](double p) { return std::cos(500.0 * p) / (0.01 + p); };
  const IntegrationResult r = xyq::integrate(f, spec);
  REQUIRE_FALSE(r.converged);
  REQUIRE(r.evaluations > 0);
  REQUIRE(std::isfinite(r.value));
  try {
    xyq::require_converged(r, "budget test");
    FAIL("require_converged should have thrown");
  } catch (const xyq::ConvergenceError& e) {
    REQUIRE(e.result.converged == false);
    REQUIRE(e.result.value == r.value);
    REQUIRE(std::string(e.what()).find("budget test") != std::string::npos);
  }
}

TEST_CASE("invalid specs and arguments are rejected") {
  QuadratureSpec bad;
  bad.abs_tol = -1.0;
  REQUIRE_THROWS_AS(xyq::integrate([](double) { return 1.0; }, bad), std::invalid_argument);
  QuadratureSpec spec;
  REQUIRE_THROWS_AS(
      xyq::integrate_oscillatory([](double) { return 1.0; }, spec, -1.0, 1.0),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      xyq::integrate_oscillatory([](double) { return 1.0; }, spec, 1.0, -1.0),
      std::invalid_argument);
}

TEST_CASE("determinism: repeated evaluation is bitwise identical") {
  QuadratureSpec spec;
  auto f = [](double p) {
    const double lam = xyq::dispersion(0.0, 0.5, p);
    return std::cos(100.0 * lam) * std::sin(p) * std::sin(p);
  };
  const IntegrationResult a = xyq::integrate_oscillatory(f, spec, 50.0, 100.0);
  const IntegrationResult b = xyq::integrate_oscillatory(f, spec, 50.0, 100.0);
  REQUIRE(a.value == b.value);
  REQUIRE(a.error_estimate == b.error_estimate);
  REQUIRE(a.evaluations == b.evaluations);
}
