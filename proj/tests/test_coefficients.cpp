#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oscspin/cli.hpp"
#include "oscspin/spin_bath.hpp"

using namespace oscspin;

namespace {

const OhmicDensity kDensity(1.0, 1.0, 10.0);
const OscillatorSpec kOsc(1.0, 1.0);

}  // namespace

TEST_CASE("closed-form gamma and D") {
  // T -> 0: gamma = L^2/(L^2 + w0^2) = 100/101, exactly
  const CoefficientSet cold =
      coefficients_ohmic_closed(kDensity, 0.0, kOsc, 0.0);
  CHECK(std::abs(cold.gamma - 100.0 / 101.0) < 1e-15);
  CHECK(std::abs(cold.d1 - 100.0 / 101.0) < 1e-15);
  CHECK(cold.method == CoefficientMethod::closed_form);

  // temperature where tanh = 1/2 halves gamma
  const double t_half = 1.0 / (2.0 * std::atanh(0.5));
  const CoefficientSet half =
      coefficients_ohmic_closed(kDensity, t_half, kOsc, 0.0);
  CHECK(half.gamma == doctest::Approx(0.5 * 100.0 / 101.0).epsilon(1e-12));

  // Fig. 2 convention: D = D0 + D1 = 2 D_QBM(T=0), temperature-independent
  const double d0 = qbm_zero_t_diffusion(kDensity, kOsc);
  for (double temperature : {0.02, 0.5, 3.0}) {
    const CoefficientSet s =
        coefficients_ohmic_closed(kDensity, temperature, kOsc, d0);
    CHECK(s.d() == doctest::Approx(2.0 * 100.0 / 101.0).epsilon(1e-12));
  }
}

TEST_CASE("principal-value fills of the closed-form set") {
  // frozen PV oracles for M = gamma0 = 1, Lambda = 10, Omega0 = 1:
  //   f1 = 2 gamma0 L^2 ln(L/w0) / (pi (L^2 + w0^2))
  //   shift(T=0) = -2 gamma0 L^3/(L^2 + w0^2)
  const CoefficientSet cold =
      coefficients_ohmic_closed(kDensity, 0.0, kOsc, 0.0);
  const double f1_expect = 2.0 * 100.0 * std::log(10.0) / (M_PI * 101.0);
  CHECK(cold.f1 == doctest::Approx(f1_expect).epsilon(1e-8));
  CHECK(cold.omega_shift_sq ==
        doctest::Approx(-2000.0 / 101.0).epsilon(1e-8));
}

TEST_CASE("qbm comparators") {
  const CoefficientSet cold = qbm_coefficients(kDensity, 0.0, kOsc);
  CHECK(cold.d1 == doctest::Approx(100.0 / 101.0).epsilon(1e-14));
  CHECK(cold.method == CoefficientMethod::qbm);
  CHECK(cold.d0 == doctest::Approx(0.0));

  double gamma_ref = cold.gamma;
  for (double temperature : {0.05, 0.4, 2.5}) {
    const CoefficientSet s = qbm_coefficients(kDensity, temperature, kOsc);
    CHECK(s.gamma == doctest::Approx(gamma_ref).epsilon(1e-15));
    // spin/QBM dissipation ratio is tanh(w0/2T)
    const CoefficientSet spin =
        coefficients_ohmic_closed(kDensity, temperature, kOsc, 0.0);
    CHECK(spin.gamma / s.gamma ==
          doctest::Approx(tanh_half(1.0, temperature)).epsilon(1e-12));
    // D_QBM strictly increases with T
    CHECK(s.d1 > cold.d1);
  }
}

TEST_CASE("regulated quadrature reproduces the closed forms") {
  const SpectralDensity j = ohmic_spectral_density(kDensity);
  QuadratureSpec spec;
  CoefficientDiagnostics diag;

  const CoefficientSet closed =
      coefficients_ohmic_closed(kDensity, 0.1, kOsc, 0.0);
  const CoefficientSet quadset =
      coefficients_quadrature(j, 0.1, kOsc, 0.0, spec, BathKind::spin, &diag);

  CHECK(std::abs(quadset.gamma / closed.gamma - 1.0) < 1e-3);
  CHECK(std::abs(quadset.d1 / closed.d1 - 1.0) < 1e-3);
  CHECK(std::abs(quadset.omega_shift_sq / closed.omega_shift_sq - 1.0) <
        1e-2);
  CHECK(std::abs(quadset.f1 / closed.f1 - 1.0) < 1e-2);
  CHECK(quadset.method == CoefficientMethod::quadrature);
  for (double dev : diag.cross_rel_dev) CHECK(dev < 1e-2);

  // T = 0 branch
  const CoefficientSet quad0 =
      coefficients_quadrature(j, 0.0, kOsc, 0.0, spec);
  CHECK(std::abs(quad0.gamma - 100.0 / 101.0) < 1e-3);

  // very high temperature: gamma dies, D1 stays
  const CoefficientSet hot =
      coefficients_quadrature(j, 1e5, kOsc, 0.0, spec);
  CHECK(std::abs(hot.gamma) < 1e-4);
  CHECK(std::abs(hot.d1 / closed.d1 - 1.0) < 1e-3);
}

TEST_CASE("surrogate mapping gives the same coefficients through the QBM route") {
  const double temperature = 0.3;
  const SpectralDensity j = ohmic_spectral_density(kDensity);
  const SpectralDensity j_osc = surrogate_density(j, temperature);
  QuadratureSpec spec;

  const CoefficientSet spin_route =
      coefficients_quadrature(j, temperature, kOsc, 0.0, spec, BathKind::spin);
  const CoefficientSet osc_route = coefficients_quadrature(
      j_osc, temperature, kOsc, 0.0, spec, BathKind::oscillator);
  CHECK(std::abs(osc_route.gamma / spin_route.gamma - 1.0) < 1e-3);
  CHECK(std::abs(osc_route.d1 / spin_route.d1 - 1.0) < 1e-3);
}

TEST_CASE("d0 is verbatim and f0 carries the constant part") {
  SpectralDensity j = ohmic_spectral_density(kDensity);
  j.c0 = 0.8;
  QuadratureSpec spec;
  const CoefficientSet s =
      coefficients_quadrature(j, 0.2, kOsc, 1.25, spec);
  CHECK(s.d0 == doctest::Approx(1.25));
  CHECK(s.f0 == doctest::Approx(-0.8).epsilon(1e-15));  // -c0/(M w0^2)
  CHECK(s.d() == doctest::Approx(s.d0 + s.d1));
  CHECK(s.f() == doctest::Approx(s.f0 + s.f1));
}

TEST_CASE("unreachable extrapolation tolerance fails loudly") {
  const SpectralDensity j = ohmic_spectral_density(kDensity);
  QuadratureSpec spec;
  spec.extrapolation_tol = 1e-18;
  spec.max_epsilon_levels = 3;
  CHECK_THROWS_AS(coefficients_quadrature(j, 0.1, kOsc, 0.0, spec),
                  QuadratureError);
}

TEST_CASE("quadrature matches closed forms across a (T, w0) grid") {
  const SpectralDensity j = ohmic_spectral_density(kDensity);
  QuadratureSpec spec;
  spec.abs_tol = 1e-8;

  const int nt = 10, nw = 10;
  std::vector<double> worst_gamma(nt * nw, 0.0), worst_d1(nt * nw, 0.0);
  cli::parallel_for(static_cast<std::size_t>(nt * nw), 0, [&](std::size_t k) {
    const int it = static_cast<int>(k) / nw;
    const int iw = static_cast<int>(k) % nw;
    const double temperature = 0.05 * std::pow(60.0 / 0.05, it / double(nt - 1));
    const double w0 = 0.4 + 2.2 * iw / double(nw - 1);
    const OscillatorSpec osc(1.0, w0);
    const CoefficientSet closed =
        coefficients_ohmic_closed(kDensity, temperature, osc, 0.0);
    const CoefficientSet quadset =
        coefficients_quadrature(j, temperature, osc, 0.0, spec);
    worst_gamma[k] = std::abs(quadset.gamma - closed.gamma) /
                     std::max(std::abs(closed.gamma), 1e-6);
    worst_d1[k] = std::abs(quadset.d1 / closed.d1 - 1.0);
  });
  for (int k = 0; k < nt * nw; ++k) {
    CHECK(worst_gamma[k] < 1e-3);
    CHECK(worst_d1[k] < 1e-3);
  }
}
