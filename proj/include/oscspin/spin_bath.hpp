#pragma once

// Spin-bath description, correlation kernels, the spin-bath -> oscillator
// surrogate mapping, and the four master-equation coefficients
// (frequency shift, damping, normal and anomalous diffusion).
//
// C(tau) = C0 + nu(tau) - i eta(tau) with
//   nu(tau)  = int dw J(w) cos(w tau)
//   eta(tau) = int dw J(w) tanh(w/2T) sin(w tau)
// and the oscillator-bath (QBM) kernels carry coth/no factor instead.

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "oscspin/errors.hpp"
#include "oscspin/quadrature.hpp"

namespace oscspin {

struct OscillatorSpec {
  double mass;
  double omega0;
  OscillatorSpec(double m, double w0) : mass(m), omega0(w0) {
    if (m <= 0.0 || w0 <= 0.0)
      throw DomainError("OscillatorSpec: mass and omega0 must be > 0");
  }
};

struct SpinParams {
  double omega;  // asymmetry
  double delta;  // tunneling
  double g;      // coupling
  SpinParams(double w, double d, double coupling)
      : omega(w), delta(d), g(coupling) {
    if (d < 0.0) throw DomainError("SpinParams: delta must be >= 0");
    if (w == 0.0 && d == 0.0)
      throw DomainError("SpinParams: omega and delta cannot both vanish");
  }
};

struct DiscreteBath {
  std::vector<SpinParams> spins;
  explicit DiscreteBath(std::vector<SpinParams> s) : spins(std::move(s)) {
    if (spins.empty()) throw DomainError("DiscreteBath: empty bath");
  }
};

struct OhmicDensity {
  double mass;         // M
  double gamma0;       // damping scale
  double cutoff_freq;  // Lorentz-Drude cutoff
  OhmicDensity(double m, double g0, double lambda)
      : mass(m), gamma0(g0), cutoff_freq(lambda) {
    if (m <= 0.0 || g0 <= 0.0 || lambda <= 0.0)
      throw DomainError("OhmicDensity: parameters must be > 0");
  }
};

enum class CoefficientMethod { closed_form, quadrature, qbm };

struct CoefficientSet {
  double omega_shift_sq = 0.0;  // frequency renormalization
  double gamma = 0.0;           // momentum damping rate
  double d0 = 0.0;              // constant diffusion contribution
  double d1 = 0.0;              // spectral diffusion contribution
  double f0 = 0.0;              // constant anomalous-diffusion contribution
  double f1 = 0.0;              // spectral anomalous-diffusion contribution
  CoefficientMethod method = CoefficientMethod::closed_form;

  double d() const { return d0 + d1; }
  double f() const { return f0 + f1; }
};

// tanh(w/2T) and coth(w/2T) with an exact zero-temperature branch.
double tanh_half(double omega, double temperature);
double coth_half(double omega, double temperature);

struct TildeFrequency {
  double omega_tilde;
  double theta;
};

// Effective splitting sqrt(w^2 + d^2) and mixing angle atan2(d, w).
TildeFrequency tilde_frequency(const SpinParams& spin);

// Constant part of the correlation function: sum (g w / w~)^2.
double bath_c0(const DiscreteBath& bath);

// Thermal mean force sum_i g_i <sigma_z^(i)>; reported, not enforced.
double mean_force(const DiscreteBath& bath, double temperature);

// Closed-form correlation function.
std::complex<double> correlation_closed(const DiscreteBath& bath,
                                        double temperature, double tau);

// Brute-force route: per-spin 2x2 diagonalization, interaction-picture
// conjugation and thermal trace, no use of the closed form. Intended for
// small baths (<= 16 spins).
std::complex<double> correlation_oracle(const DiscreteBath& bath,
                                        double temperature, double tau);

// Spectral density with the metadata the quadrature needs.
struct SpectralDensity {
  std::function<double(double)> j;
  double structure_scale = 1.0;     // smallest spectral feature width
  double c0 = 0.0;                  // constant correlation part carried along
  std::vector<double> breakpoints;  // quadrature seed points
  double tail_start = 0.0;          // beyond: smooth with |J| <~ tail_amp/w
  double tail_amp = 0.0;
  double hard_cutoff = std::numeric_limits<double>::infinity();
};

// J(w) = (2 M gamma0 / pi) w L^2 / (L^2 + w^2)
double ohmic_j(const OhmicDensity& density, double omega_tilde);
SpectralDensity ohmic_spectral_density(const OhmicDensity& density);

// Narrow-Gaussian representation of a discrete bath (each line gets weight
// (g d / w~)^2); used for continuum/discrete consistency checks.
SpectralDensity gaussian_bath_density(const DiscreteBath& bath, double sigma);

// Surrogate oscillator-bath density J_osc = J tanh(w/2T); the constant
// correlation part is dropped by the mapping.
SpectralDensity surrogate_density(const SpectralDensity& j,
                                  double temperature);

enum class BathKind { spin, oscillator };

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  double omega_max = 0.0;      // 0 = automatic, tail-corrected
  double theta_target = 300.;  // minimum omega_max * tau for the tail series
  long max_evals = 4'000'000;
  // regulated time-domain coefficient integrals:
  double epsilon0 = 0.4;
  int min_epsilon_levels = 3;
  int max_epsilon_levels = 10;
  double extrapolation_tol = 1e-3;
  double crosscheck_tol = 1e-2;  // time vs frequency route
  double pv_delta = 0.5;         // PV window, fraction of the pole position
};

struct KernelValues {
  double nu = 0.0;
  double eta = 0.0;
  double nu_error = 0.0;
  double eta_error = 0.0;
  double omega_max = 0.0;
};

// Noise/dissipation kernels at one tau. kind selects the spin-bath forms
// (tanh in eta) or the oscillator-bath forms (coth in nu).
KernelValues bath_kernels(const SpectralDensity& j, double temperature, double tau,
                     const QuadratureSpec& spec,
                     BathKind kind = BathKind::spin);

// Frequency-domain values (delta identity for gamma/D1, principal-value
// integrals for the shift and f1). Exposed so the oracle can diff routes.
struct FreqRouteValues {
  double omega_shift_sq;
  double gamma;
  double d1;
  double f1;
};
FreqRouteValues coefficients_frequency_route(const SpectralDensity& j,
                                             double temperature,
                                             const OscillatorSpec& osc,
                                             const QuadratureSpec& spec,
                                             BathKind kind = BathKind::spin);

struct CoefficientDiagnostics {
  // order: omega_shift_sq, gamma, d1, f1
  std::array<double, 4> tau_route{};
  std::array<double, 4> freq_route{};
  std::array<double, 4> residual{};       // Richardson residual, absolute
  std::array<double, 4> cross_rel_dev{};  // |tau - freq| / scale
  std::vector<double> epsilons;
  double t_max = 0.0;
  long kernel_evals = 0;
};

// Regulated time-domain evaluation of the coefficient integrals
// (exp(-eps tau) regulator, eps halved per level, Richardson extrapolation
// to eps -> 0), cross-checked against the frequency route. d0 is taken
// verbatim; f0 = -c0/(M w0^2) from the regulated limit.
CoefficientSet coefficients_quadrature(const SpectralDensity& j,
                                       double temperature,
                                       const OscillatorSpec& osc, double d0,
                                       const QuadratureSpec& spec,
                                       BathKind kind = BathKind::spin,
                                       CoefficientDiagnostics* diag = nullptr);

// Closed forms for the ohmic Lorentz-Drude density; the shift and f1 have
// no closed form and are filled by principal-value quadrature.
CoefficientSet coefficients_ohmic_closed(const OhmicDensity& density,
                                         double temperature,
                                         const OscillatorSpec& osc, double d0,
                                         const QuadratureSpec& spec = {});

// Quantum-Brownian-motion comparators for the same density.
CoefficientSet qbm_coefficients(const OhmicDensity& density,
                                double temperature, const OscillatorSpec& osc,
                                const QuadratureSpec& spec = {});

// D_QBM(T=0) = M gamma0 w0 L^2/(L^2+w0^2); the usual d0 convention.
double qbm_zero_t_diffusion(const OhmicDensity& density,
                            const OscillatorSpec& osc);

}  // namespace oscspin
