#include "oscspin/spin_bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscspin/complex_matrix.hpp"

namespace oscspin {

namespace {

constexpr double kPi = std::numbers::pi;
using quad::Fn;

quad::Options quad_options(const QuadratureSpec& spec) {
  quad::Options o;
  o.abs_tol = spec.abs_tol;
  o.rel_tol = spec.rel_tol;
  o.max_evals = spec.max_evals;
  return o;
}

}  // namespace

double tanh_half(double omega, double temperature) {
  if (temperature < 0.0) throw DomainError("tanh_half: negative temperature");
  if (temperature == 0.0) return 1.0;
  return std::tanh(omega / (2.0 * temperature));
}

double coth_half(double omega, double temperature) {
  if (temperature < 0.0) throw DomainError("coth_half: negative temperature");
  if (temperature == 0.0) return 1.0;
  return 1.0 / std::tanh(omega / (2.0 * temperature));
}

TildeFrequency tilde_frequency(const SpinParams& spin) {
  return {std::hypot(spin.omega, spin.delta),
          std::atan2(spin.delta, spin.omega)};
}

double bath_c0(const DiscreteBath& bath) {
  double sum = 0.0;
  for (const auto& s : bath.spins) {
    const double wt = tilde_frequency(s).omega_tilde;
    const double term = s.g * s.omega / wt;
    sum += term * term;
  }
  return sum;
}

double mean_force(const DiscreteBath& bath, double temperature) {
  // <sigma_z> of a thermal (omega, delta) spin is -(omega/w~) tanh(w~/2T).
  double sum = 0.0;
  for (const auto& s : bath.spins) {
    const double wt = tilde_frequency(s).omega_tilde;
    sum += s.g * (-(s.omega / wt) * tanh_half(wt, temperature));
  }
  return sum;
}

std::complex<double> correlation_closed(const DiscreteBath& bath,
                                        double temperature, double tau) {
  std::complex<double> c(bath_c0(bath), 0.0);
  for (const auto& s : bath.spins) {
    const double wt = tilde_frequency(s).omega_tilde;
    const double amp = std::pow(s.g * s.delta / wt, 2);
    c += amp * std::complex<double>(
                   std::cos(wt * tau),
                   -tanh_half(wt, temperature) * std::sin(wt * tau));
  }
  return c;
}

std::complex<double> correlation_oracle(const DiscreteBath& bath,
                                        double temperature, double tau) {
  if (temperature < 0.0)
    throw DomainError("correlation_oracle: negative temperature");
  std::complex<double> c(0.0, 0.0);
  const cplx iu(0.0, 1.0);
  for (const auto& s : bath.spins) {
    const auto [wt, theta] = tilde_frequency(s);
    // Eigenvectors of H = (omega sz + delta sx)/2 as columns of U.
    ComplexMatrix u(2);
    u(0, 0) = std::cos(0.5 * theta);
    u(1, 0) = std::sin(0.5 * theta);
    u(0, 1) = -std::sin(0.5 * theta);
    u(1, 1) = std::cos(0.5 * theta);
    const ComplexMatrix udag = u.adjoint();

    // Thermal occupations of E = +-wt/2 without overflow.
    double p_plus, p_minus;
    if (temperature == 0.0) {
      p_plus = 0.0;
      p_minus = 1.0;
    } else {
      p_plus = 1.0 / (1.0 + std::exp(wt / temperature));
      p_minus = 1.0 - p_plus;
    }
    ComplexMatrix occ(2);
    occ(0, 0) = p_plus;
    occ(1, 1) = p_minus;
    const ComplexMatrix rho_th = (u * occ) * udag;

    ComplexMatrix phase(2);
    phase(0, 0) = std::exp(iu * (0.5 * wt * tau));
    phase(1, 1) = std::exp(-iu * (0.5 * wt * tau));
    const ComplexMatrix evolve = (u * phase) * udag;
    const ComplexMatrix evolve_dag = evolve.adjoint();

    ComplexMatrix sz(2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;

    const ComplexMatrix sz_tau = (evolve * sz) * evolve_dag;
    const cplx val = ((rho_th * sz_tau) * sz).trace();
    c += s.g * s.g * val;
  }
  return c;
}

double ohmic_j(const OhmicDensity& density, double omega_tilde) {
  if (omega_tilde < 0.0) throw DomainError("ohmic_j: negative frequency");
  const double l2 = density.cutoff_freq * density.cutoff_freq;
  return (2.0 * density.mass * density.gamma0 / kPi) * omega_tilde * l2 /
         (l2 + omega_tilde * omega_tilde);
}

SpectralDensity ohmic_spectral_density(const OhmicDensity& density) {
  SpectralDensity sd;
  sd.j = [density](double w) { return ohmic_j(density, w); };
  sd.structure_scale = density.cutoff_freq;
  sd.breakpoints = {density.cutoff_freq};
  sd.tail_start = 4.0 * density.cutoff_freq;
  sd.tail_amp = 2.0 * density.mass * density.gamma0 *
                density.cutoff_freq * density.cutoff_freq / kPi;
  return sd;
}

SpectralDensity gaussian_bath_density(const DiscreteBath& bath, double sigma) {
  if (sigma <= 0.0) throw DomainError("gaussian_bath_density: sigma <= 0");
  struct Line {
    double center, weight;
  };
  std::vector<Line> lines;
  double wmax = 0.0;
  for (const auto& s : bath.spins) {
    const double wt = tilde_frequency(s).omega_tilde;
    lines.push_back({wt, std::pow(s.g * s.delta / wt, 2)});
    wmax = std::max(wmax, wt);
  }
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
  SpectralDensity sd;
  sd.j = [lines, sigma, norm](double w) {
    double v = 0.0;
    for (const auto& l : lines) {
      const double z = (w - l.center) / sigma;
      v += l.weight * norm * std::exp(-0.5 * z * z);
    }
    return v;
  };
  sd.structure_scale = sigma;
  sd.c0 = bath_c0(bath);
  for (const auto& l : lines) {
    sd.breakpoints.push_back(l.center);
    sd.breakpoints.push_back(std::max(0.0, l.center - 3.0 * sigma));
    sd.breakpoints.push_back(l.center + 3.0 * sigma);
  }
  std::sort(sd.breakpoints.begin(), sd.breakpoints.end());
  sd.hard_cutoff = wmax + 12.0 * sigma;
  return sd;
}

SpectralDensity surrogate_density(const SpectralDensity& j,
                                  double temperature) {
  if (temperature < 0.0)
    throw DomainError("surrogate_density: negative temperature");
  SpectralDensity sd = j;
  const auto base = j.j;
  sd.j = [base, temperature](double w) {
    return base(w) * tanh_half(w, temperature);
  };
  sd.c0 = 0.0;  // the mapping drops the constant correlation part
  if (temperature > 0.0)
    sd.structure_scale = std::min(
        j.structure_scale,
        std::max(2.0 * temperature, 1e-4 * j.structure_scale));
  return sd;
}

namespace {

// Integrand pair for one bath kind: weight entering nu (cos transform) and
// eta (sin transform). The oscillator-kind nu weight J coth needs its
// omega -> 0 limit patched in.
struct KernelWeights {
  Fn nu;
  Fn eta;
  bool same = false;  // true when nu and eta weights coincide (T = 0)
};

KernelWeights kernel_weights(const SpectralDensity& j, double temperature,
                             BathKind kind) {
  KernelWeights w;
  const auto base = j.j;
  if (kind == BathKind::spin) {
    w.nu = base;
    if (temperature == 0.0) {
      w.eta = base;
      w.same = true;
    } else {
      w.eta = [base, temperature](double x) {
        return base(x) * tanh_half(x, temperature);
      };
    }
  } else {
    w.eta = base;
    if (temperature == 0.0) {
      w.nu = base;
      w.same = true;
    } else {
      const double h = 1e-7 * j.structure_scale;
      const double limit0 = 2.0 * temperature * base(h) / h;
      w.nu = [base, temperature, limit0, h](double x) {
        if (x < h) return limit0;
        return base(x) * coth_half(x, temperature);
      };
    }
  }
  return w;
}

std::vector<double> transform_edges(const SpectralDensity& j,
                                    double temperature, double w_max) {
  double feature = j.structure_scale;
  if (temperature > 0.0)
    feature = std::min(
        feature, std::max(2.0 * temperature, 1e-4 * j.structure_scale));
  auto edges = quad::geometric_edges(feature / 16.0, w_max, 1.8);
  for (double b : j.breakpoints)
    if (b > 0.0 && b < w_max) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

struct Truncation {
  double w_max;
  bool add_tail;
};

Truncation pick_omega_max(const SpectralDensity& j, const QuadratureSpec& spec,
                          double tau) {
  if (spec.omega_max > 0.0) return {spec.omega_max, false};
  if (std::isfinite(j.hard_cutoff)) return {j.hard_cutoff, false};
  if (tau > 0.0 && j.tail_amp > 0.0)
    return {std::max(j.tail_start, spec.theta_target / tau), true};
  throw QuadratureError(
      "bath_kernels: unbounded spectral support at tau = 0 (the plain integral of "
      "J is cutoff-dependent); supply QuadratureSpec::omega_max",
      0.0);
}

}  // namespace

KernelValues bath_kernels(const SpectralDensity& j, double temperature, double tau,
                     const QuadratureSpec& spec, BathKind kind) {
  if (temperature < 0.0) throw DomainError("bath_kernels: negative temperature");
  if (tau < 0.0) throw DomainError("bath_kernels: negative tau");
  const auto opts = quad_options(spec);
  const KernelWeights w = kernel_weights(j, temperature, kind);
  const Truncation tr = pick_omega_max(j, spec, tau);

  KernelValues out;
  out.omega_max = tr.w_max;

  if (tau == 0.0) {
    // eta(0) = 0 identically; nu(0) over the explicit window.
    auto r = quad::adaptive_gk15(w.nu, 0.0, tr.w_max, opts, j.breakpoints);
    out.nu = r.value;
    out.nu_error = r.error;
    out.eta = 0.0;
    out.eta_error = 0.0;
    return out;
  }

  const auto edges = transform_edges(j, temperature, tr.w_max);
  auto fnu = quad::fourier_finite(w.nu, tau, edges, opts);
  out.nu = fnu.value.real();
  out.nu_error = fnu.error;
  double eta_im, eta_err;
  if (w.same) {
    eta_im = fnu.value.imag();
    eta_err = fnu.error;
  } else {
    auto feta = quad::fourier_finite(w.eta, tau, edges, opts);
    eta_im = feta.value.imag();
    eta_err = feta.error;
  }
  out.eta = eta_im;
  out.eta_error = eta_err;

  if (tr.add_tail) {
    auto [tnu, enu] = quad::ibp_tail(w.nu, tr.w_max, tau);
    out.nu += tnu.real();
    out.nu_error += enu;
    if (w.same) {
      out.eta += tnu.imag();
      out.eta_error += enu;
    } else {
      auto [teta, eeta] = quad::ibp_tail(w.eta, tr.w_max, tau);
      out.eta += teta.imag();
      out.eta_error += eeta;
    }
  }
  return out;
}

FreqRouteValues coefficients_frequency_route(const SpectralDensity& j,
                                             double temperature,
                                             const OscillatorSpec& osc,
                                             const QuadratureSpec& spec,
                                             BathKind kind) {
  const double w0 = osc.omega0;
  const double m = osc.mass;
  const auto opts = quad_options(spec);
  const KernelWeights w = kernel_weights(j, temperature, kind);

  FreqRouteValues out{};
  // Fourier sine/cosine of the kernels against themselves collapse onto
  // (pi/2) delta at the oscillator frequency.
  out.gamma = (kPi / (2.0 * m * w0)) * w.eta(w0);
  out.d1 = (kPi / 2.0) * w.nu(w0);

  const double delta = spec.pv_delta * w0;
  const double tail_start =
      std::max({j.tail_start, 4.0 * w0, j.structure_scale});
  // shift: -(2/M) PV int eta_weight(w) * w/(w^2 - w0^2) dw
  const Fn shift_num = [&w, w0](double x) {
    return w.eta(x) * x / (x + w0);
  };
  auto shift = quad::pv_integral(shift_num, w0, delta, tail_start, opts,
                                 j.breakpoints);
  out.omega_shift_sq = -(2.0 / m) * shift.value;
  // f1: (1/M) PV int nu_weight(w) / (w^2 - w0^2) dw
  const Fn f1_num = [&w, w0](double x) { return w.nu(x) / (x + w0); };
  auto f1 =
      quad::pv_integral(f1_num, w0, delta, tail_start, opts, j.breakpoints);
  out.f1 = (1.0 / m) * f1.value;
  return out;
}

namespace {

// Composite GK15 grid over [0, t_max] whose kernel values are shared by all
// regulator strengths and by all four coefficient integrals.
class RegulatedIntegrals {
 public:
  RegulatedIntegrals(const SpectralDensity& j, double temperature,
                     const OscillatorSpec& osc, const QuadratureSpec& spec,
                     BathKind kind)
      : j_(j), temperature_(temperature), osc_(osc), spec_(spec),
        kind_(kind) {
    // The outer integral owns the error budget: kernel samples far looser
    // than the final coefficient tolerance are sufficient, and the cost is
    // dominated by them.
    inner_spec_ = spec;
    inner_spec_.abs_tol = std::max(spec.abs_tol, 4e-8);
    inner_spec_.rel_tol = std::max(spec.rel_tol, 1e-7);
  }

  // Extends the grid until the trailing blocks stop contributing at the
  // given regulator strength. The block rule replaces a fixed 1/eps range:
  // kernels with fast decay end the grid early, slow power-law tails keep
  // extending until the oscillation-damped contribution is negligible.
  void ensure_range(double eps) {
    const double hi = osc_.omega0 + 1.0;
    const double h_u = kPi / (2.5 * hi);
    const double tail_tol = 12.0 * inner_spec_.abs_tol;
    const double hard_cap = 4000.0;
    const int block_panels = 8;

    if (t_max_ == 0.0) {
      // graded start: transients of the kernels live at small tau
      const double t_fine = 4.0;
      double t = 0.0;
      double h = h_u / 16.0;
      while (t < t_fine) {
        add_panel(t, std::min(t + h, t_fine));
        t = std::min(t + h, t_fine);
        h = std::min(h * 1.5, h_u);
      }
      t_max_ = t_fine;
    }

    int quiet_blocks = quiet_blocks_at(eps, block_panels);
    while (quiet_blocks < 2 && t_max_ < hard_cap) {
      const std::size_t first = panels_.size();
      for (int p = 0; p < block_panels; ++p) {
        add_panel(t_max_, t_max_ + h_u);
        t_max_ += h_u;
      }
      double contrib = 0.0;
      for (int which = 0; which < 4; ++which) {
        double sum = 0.0;
        for (std::size_t i = first; i < panels_.size(); ++i)
          sum += panel_value(panels_[i], which, eps, false);
        contrib = std::max(contrib, std::abs(sum));
      }
      quiet_blocks = contrib < tail_tol ? quiet_blocks + 1 : 0;
    }
  }

  // integral exp(-eps t) k(t) trig(w0 t), k in {eta, nu}, trig in {cos, sin}
  double assemble(int which, double eps) const {
    double total = 0.0;
    for (const auto& p : panels_) total += panel_value(p, which, eps, false);
    return total;
  }

  double total_error(int which, double eps) const {
    double err = 0.0;
    for (const auto& p : panels_)
      err += std::abs(panel_value(p, which, eps, false) -
                      panel_value(p, which, eps, true));
    return err;
  }

  void refine(double eps_min, double tol, int max_splits) {
    for (int s = 0; s < max_splits; ++s) {
      double worst = 0.0;
      std::size_t worst_idx = 0;
      double total = 0.0;
      for (std::size_t i = 0; i < panels_.size(); ++i) {
        double perr = 0.0;
        for (int which = 0; which < 4; ++which)
          perr = std::max(perr,
                          std::abs(panel_value(panels_[i], which, eps_min,
                                               false) -
                                   panel_value(panels_[i], which, eps_min,
                                               true)));
        total += perr;
        if (perr > worst) {
          worst = perr;
          worst_idx = i;
        }
      }
      if (total <= tol) return;
      split_panel(worst_idx);
    }
  }

  long kernel_evals() const { return kernel_evals_; }
  double t_max() const { return t_max_; }
  double inner_abs_tol() const { return inner_spec_.abs_tol; }

 private:
  struct Panel {
    double a, b;
    std::array<double, 15> tau;
    std::array<double, 15> eta;
    std::array<double, 15> nu;
  };

  // Counts trailing panel blocks already below the tail tolerance at this
  // regulator strength (grid reuse across extrapolation levels).
  int quiet_blocks_at(double eps, int block_panels) const {
    const double tail_tol = 12.0 * inner_spec_.abs_tol;
    int quiet = 0;
    std::size_t end = panels_.size();
    while (quiet < 2 && end >= static_cast<std::size_t>(block_panels)) {
      const std::size_t first = end - static_cast<std::size_t>(block_panels);
      double contrib = 0.0;
      for (int which = 0; which < 4; ++which) {
        double sum = 0.0;
        for (std::size_t i = first; i < end; ++i)
          sum += panel_value(panels_[i], which, eps, false);
        contrib = std::max(contrib, std::abs(sum));
      }
      if (contrib >= tail_tol) break;
      ++quiet;
      end = first;
    }
    return quiet;
  }

  void add_panel(double a, double b) {
    const auto& nodes = quad::gk15_nodes();
    Panel p;
    p.a = a;
    p.b = b;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < 15; ++i) {
      const double t = c + h * nodes.x[i];
      p.tau[i] = t;
      const KernelValues kv =
          bath_kernels(j_, temperature_, t, inner_spec_, kind_);
      p.eta[i] = kv.eta;
      p.nu[i] = kv.nu;
      kernel_evals_ += 1;
    }
    panels_.push_back(std::move(p));
  }

  // Children replace the parent in place so panels_ stays ordered in tau
  // (the trailing-block bookkeeping relies on that).
  void split_panel(std::size_t idx) {
    const Panel p = panels_[idx];
    panels_.erase(panels_.begin() + static_cast<std::ptrdiff_t>(idx));
    const double m = 0.5 * (p.a + p.b);
    add_panel(p.a, m);
    Panel left_child = std::move(panels_.back());
    panels_.pop_back();
    add_panel(m, p.b);
    Panel right_child = std::move(panels_.back());
    panels_.pop_back();
    panels_.insert(panels_.begin() + static_cast<std::ptrdiff_t>(idx),
                   {std::move(left_child), std::move(right_child)});
  }

  double panel_value(const Panel& p, int which, double eps,
                     bool gauss) const {
    const auto& nodes = quad::gk15_nodes();
    const double h = 0.5 * (p.b - p.a);
    const double w0 = osc_.omega0;
    double sum = 0.0;
    for (int i = 0; i < 15; ++i) {
      const double wgt = gauss ? nodes.wg[i] : nodes.wk[i];
      if (wgt == 0.0) continue;
      const double t = p.tau[i];
      const double kern = (which < 2) ? p.eta[i] : p.nu[i];
      const double trig =
          (which % 2 == 0) ? std::cos(w0 * t) : std::sin(w0 * t);
      sum += wgt * kern * trig * std::exp(-eps * t);
    }
    return sum * h;
  }

  const SpectralDensity& j_;
  double temperature_;
  OscillatorSpec osc_;
  QuadratureSpec spec_;
  QuadratureSpec inner_spec_;
  BathKind kind_;
  std::vector<Panel> panels_;
  double t_max_ = 0.0;
  long kernel_evals_ = 0;
};

// Polynomial extrapolation of the last three levels to eps = 0 (levels are
// a geometric eps ladder with ratio 1/2).
double richardson3(const std::vector<double>& levels) {
  const std::size_t n = levels.size();
  return levels[n - 3] / 3.0 - 2.0 * levels[n - 2] +
         (8.0 / 3.0) * levels[n - 1];
}

}  // namespace

CoefficientSet coefficients_quadrature(const SpectralDensity& j,
                                       double temperature,
                                       const OscillatorSpec& osc, double d0,
                                       const QuadratureSpec& spec,
                                       BathKind kind,
                                       CoefficientDiagnostics* diag) {
  if (osc.omega0 <= 0.0)
    throw DomainError("coefficients_quadrature: omega0 must be > 0");

  RegulatedIntegrals grid(j, temperature, osc, spec, kind);

  std::vector<double> epsilons;
  // rows: integrals of eta*cos, eta*sin, nu*cos, nu*sin per level
  std::array<std::vector<double>, 4> levels;
  std::array<double, 4> extrap{}, residual{};

  int level_count = 0;
  double prev_extrap[4] = {0.0, 0.0, 0.0, 0.0};
  bool converged = false;
  while (level_count < spec.max_epsilon_levels) {
    const double eps = spec.epsilon0 / std::pow(2.0, level_count);
    epsilons.push_back(eps);
    grid.ensure_range(eps);
    grid.refine(eps, std::max(50.0 * spec.abs_tol, 2e-6), 400);
    for (int w = 0; w < 4; ++w) levels[w].push_back(grid.assemble(w, eps));
    ++level_count;
    if (level_count < spec.min_epsilon_levels || level_count < 3) continue;

    double scale_ref = 0.0;
    for (int w = 0; w < 4; ++w) {
      extrap[w] = richardson3(levels[w]);
      scale_ref = std::max(scale_ref, std::abs(extrap[w]));
    }
    // Residuals cannot drop below the kernel-sampling noise that the outer
    // quadrature accumulates; a floor keeps tiny integrals from demanding
    // impossible relative accuracy.
    const double noise_floor = 100.0 * grid.inner_abs_tol();
    bool ok = true;
    for (int w = 0; w < 4; ++w) {
      const double ref =
          (level_count == 3)
              ? 2.0 * levels[w][2] - levels[w][1]  // linear fallback
              : prev_extrap[w];
      residual[w] = std::abs(extrap[w] - ref);
      const double allowed = std::max(
          spec.extrapolation_tol *
              std::max(std::abs(extrap[w]), 0.01 * scale_ref),
          noise_floor);
      if (residual[w] > allowed) ok = false;
      prev_extrap[w] = extrap[w];
    }
    if (ok) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    double worst = 0.0;
    for (double r : residual) worst = std::max(worst, r);
    throw QuadratureError(
        "coefficients_quadrature: regulator extrapolation residual " +
            std::to_string(worst) + " above tolerance after " +
            std::to_string(level_count) + " levels",
        worst);
  }

  const double m = osc.mass, w0 = osc.omega0;
  CoefficientSet out;
  out.omega_shift_sq = -(2.0 / m) * extrap[0];
  out.gamma = extrap[1] / (m * w0);
  out.d1 = extrap[2];
  out.f1 = -extrap[3] / (m * w0);
  out.d0 = d0;
  out.f0 = -j.c0 / (m * w0 * w0);
  out.method = CoefficientMethod::quadrature;

  const FreqRouteValues freq =
      coefficients_frequency_route(j, temperature, osc, spec, kind);
  const double tau_vals[4] = {out.omega_shift_sq, out.gamma, out.d1, out.f1};
  const double freq_vals[4] = {freq.omega_shift_sq, freq.gamma, freq.d1,
                               freq.f1};
  double scale_ref = 0.0;
  for (double v : freq_vals) scale_ref = std::max(scale_ref, std::abs(v));
  std::array<double, 4> cross{};
  for (int w = 0; w < 4; ++w) {
    cross[w] = std::abs(tau_vals[w] - freq_vals[w]) /
               std::max({std::abs(freq_vals[w]), 0.01 * scale_ref, 1e-300});
    if (cross[w] > spec.crosscheck_tol)
      throw QuadratureError(
          "coefficients_quadrature: time-domain and frequency-domain routes "
          "disagree (relative deviation " +
              std::to_string(cross[w]) + ")",
          cross[w]);
  }

  if (diag) {
    diag->tau_route = {out.omega_shift_sq, out.gamma, out.d1, out.f1};
    diag->freq_route = {freq.omega_shift_sq, freq.gamma, freq.d1, freq.f1};
    diag->residual = residual;
    diag->cross_rel_dev = cross;
    diag->epsilons = epsilons;
    diag->t_max = grid.t_max();
    diag->kernel_evals = grid.kernel_evals();
  }
  return out;
}

CoefficientSet coefficients_ohmic_closed(const OhmicDensity& density,
                                         double temperature,
                                         const OscillatorSpec& osc, double d0,
                                         const QuadratureSpec& spec) {
  if (osc.omega0 <= 0.0)
    throw DomainError("coefficients_ohmic_closed: omega0 must be > 0");
  const double w0 = osc.omega0;
  const double l2 = density.cutoff_freq * density.cutoff_freq;
  const double lorentz = l2 / (l2 + w0 * w0);

  CoefficientSet out;
  out.gamma = density.gamma0 * lorentz * tanh_half(w0, temperature);
  out.d1 = density.mass * density.gamma0 * w0 * lorentz;
  out.d0 = d0;
  out.f0 = 0.0;  // no constant correlation part for a pure-J description
  out.method = CoefficientMethod::closed_form;

  const auto sd = ohmic_spectral_density(density);
  const FreqRouteValues freq = coefficients_frequency_route(
      sd, temperature, osc, spec, BathKind::spin);
  out.omega_shift_sq = freq.omega_shift_sq;
  out.f1 = freq.f1;
  return out;
}

CoefficientSet qbm_coefficients(const OhmicDensity& density,
                                double temperature, const OscillatorSpec& osc,
                                const QuadratureSpec& spec) {
  if (osc.omega0 <= 0.0)
    throw DomainError("qbm_coefficients: omega0 must be > 0");
  const double w0 = osc.omega0;
  const double l2 = density.cutoff_freq * density.cutoff_freq;
  const double lorentz = l2 / (l2 + w0 * w0);

  CoefficientSet out;
  out.gamma = density.gamma0 * lorentz;
  out.d1 = density.mass * density.gamma0 * w0 * lorentz *
           coth_half(w0, temperature);
  out.d0 = 0.0;
  out.f0 = 0.0;
  out.method = CoefficientMethod::qbm;

  const auto sd = ohmic_spectral_density(density);
  const FreqRouteValues freq = coefficients_frequency_route(
      sd, temperature, osc, spec, BathKind::oscillator);
  out.omega_shift_sq = freq.omega_shift_sq;
  out.f1 = freq.f1;
  return out;
}

double qbm_zero_t_diffusion(const OhmicDensity& density,
                            const OscillatorSpec& osc) {
  const double l2 = density.cutoff_freq * density.cutoff_freq;
  return density.mass * density.gamma0 * osc.omega0 * l2 /
         (l2 + osc.omega0 * osc.omega0);
}

}  // namespace oscspin
