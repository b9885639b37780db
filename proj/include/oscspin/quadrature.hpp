#pragma once

// 1D quadrature toolbox:
//  - adaptive Gauss-Kronrod 15(7) for smooth integrands,
//  - a 1/x transform for smooth tails to infinity,
//  - an adaptive Filon rule (quadratic interpolation against exact
//    trigonometric moments) for Fourier-type integrals whose oscillation
//    count is far beyond what node-per-wavelength quadrature can afford,
//  - integration-by-parts tail corrections for semi-infinite transforms,
//  - principal-value integrals with symmetric subtraction around the pole.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "oscspin/errors.hpp"

namespace oscspin::quad {

using Fn = std::function<double(double)>;

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 48;
  long max_evals = 2'000'000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
};

struct FourierResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  long evals = 0;
  double omega_max = 0.0;  // truncation point actually used
};

// Integral of f over [a, b]. `seeds` are interior breakpoints that become
// initial subinterval edges (sharp features the refinement should not have
// to discover on its own).
Result adaptive_gk15(const Fn& f, double a, double b, const Options& opts,
                     const std::vector<double>& seeds = {});

// Integral of f over [w, infinity) via u = 1/x; f must decay at least
// like 1/x^2.
Result integrate_to_infinity(const Fn& f, double w, const Options& opts);

// Integral of f(x) exp(i tau x) over the union of [edges[k], edges[k+1]].
// Edges must be increasing; tau may be 0 (plain quadrature limit).
FourierResult fourier_finite(const Fn& f, double tau,
                             const std::vector<double>& edges,
                             const Options& opts);

// Asymptotic tail of integral_{w}^{inf} g(x) exp(i tau x) dx from four
// integration-by-parts terms with numerically differentiated g. Valid when
// g is smooth and decaying and w*tau >> 1. Returns {value, error estimate}.
std::pair<std::complex<double>, double> ibp_tail(const Fn& g, double w,
                                                 double tau);

// PV integral over [0, inf) of n(x)/(x - pole), pole > 0, with n smooth and
// decaying at least like 1/x. `delta` is the half-width of the symmetric
// subtraction window (clamped to the pole distance from 0).
Result pv_integral(const Fn& numerator, double pole, double delta,
                   double tail_start, const Options& opts,
                   const std::vector<double>& seeds = {});

// Geometric edge ladder {0, h0, h0*r, ...} U {w}; helper for transforms of
// integrands with structure near the origin and slow decay.
std::vector<double> geometric_edges(double h0, double w, double ratio = 1.8);

// Gauss-Kronrod 15(7) node set on [-1, 1]: abscissae, Kronrod weights and
// Gauss weights (zero on pure Kronrod points). Exposed for composite rules
// that cache integrand values across several integrals.
struct Gk15Nodes {
  std::array<double, 15> x;
  std::array<double, 15> wk;
  std::array<double, 15> wg;
};
const Gk15Nodes& gk15_nodes();

}  // namespace oscspin::quad
