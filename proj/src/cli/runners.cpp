#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "oscspin/cli.hpp"
#include "oscspin/dynamics.hpp"
#include "oscspin/kernels.hpp"
#include "oscspin/oracle.hpp"

namespace oscspin::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

OscillatorSpec oscillator_spec(const ConfigMap& c) {
  return {c.get_double("oscillator.mass"), c.get_double("oscillator.omega0")};
}

OhmicDensity ohmic_density(const ConfigMap& c) {
  return {c.get_double("oscillator.mass"), c.get_double("bath.gamma0"),
          c.get_double("bath.lambda")};
}

DiscreteBath discrete_bath(const ConfigMap& c) {
  const std::string spec = c.get("bath.spins");
  std::vector<SpinParams> spins;
  std::stringstream ss(spec);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    if (triple.find_first_not_of(" \t") == std::string::npos) continue;
    double w, d, g;
    if (std::sscanf(triple.c_str(), " %lf , %lf , %lf", &w, &d, &g) != 3)
      throw ConfigError("bath.spins: cannot parse triple '" + triple + "'");
    spins.emplace_back(w, d, g);
  }
  if (spins.empty())
    throw ConfigError("bath.kind = discrete requires bath.spins");
  return DiscreteBath(std::move(spins));
}

QuadratureSpec quadrature_spec(const ConfigMap& c) {
  QuadratureSpec q;
  q.abs_tol = c.get_double("quadrature.abs_tol");
  q.rel_tol = c.get_double("quadrature.rel_tol");
  q.omega_max = c.get_double("quadrature.omega_max");
  q.epsilon0 = c.get_double("quadrature.epsilon0");
  q.min_epsilon_levels =
      static_cast<int>(c.get_long("quadrature.min_epsilon_levels"));
  q.max_epsilon_levels =
      static_cast<int>(c.get_long("quadrature.max_epsilon_levels"));
  q.extrapolation_tol = c.get_double("quadrature.extrapolation_tol");
  q.crosscheck_tol = c.get_double("quadrature.crosscheck_tol");
  return q;
}

double resolve_d0(const ConfigMap& c, const OhmicDensity& density,
                  const OscillatorSpec& osc) {
  const std::string policy = c.get("coefficients.d0_policy");
  if (policy == "qbm_zero_t") return qbm_zero_t_diffusion(density, osc);
  if (policy == "zero") return 0.0;
  if (policy == "value") return c.get_double("coefficients.d0_value");
  throw ConfigError("coefficients.d0_policy must be qbm_zero_t, zero or value");
}

TlsJointSpec tls_spec_from_nbar(const ConfigMap& c, double gamma_tls,
                                double nbar) {
  return TlsJointSpec::from_nbar(
      c.get_double("oscillator.omega0"), c.get_double("tls.delta"),
      c.get_double("tls.g"), gamma_tls, nbar,
      c.get_double("tls.hamiltonian_factor"));
}

std::size_t resolve_cutoff(const ConfigMap& c, Mode mode) {
  const std::string& value = c.get("oscillator.cutoff");
  if (value == "auto") return mode == Mode::fig3 ? 80 : 30;
  const long cutoff = c.get_long("oscillator.cutoff");
  if (cutoff < 2) throw ConfigError("oscillator.cutoff must be >= 2");
  return static_cast<std::size_t>(cutoff);
}

double resolve_dt(const ConfigMap& c, bool joint, double gamma_tls) {
  double dt = c.get_double("evolution.dt");
  if (dt > 0.0) return dt;
  const double w0 = c.get_double("oscillator.omega0");
  dt = 0.01 / w0;
  if (joint && gamma_tls > 0.0) dt = std::min(dt, 0.002 / gamma_tls);
  return dt;
}

int resolve_sample_every(const ConfigMap& c, double dt, double t_end) {
  long every = c.get_long("evolution.sample_every");
  if (every > 0) return static_cast<int>(every);
  const double steps = t_end / dt;
  return static_cast<int>(std::max(1.0, std::floor(steps / 400.0)));
}

IntegrationOptions integration_options(const ConfigMap& c, bool joint,
                                       double gamma_tls) {
  IntegrationOptions o;
  o.t_end = c.get_double("evolution.t_end");
  o.dt = resolve_dt(c, joint, gamma_tls);
  o.sample_every = resolve_sample_every(c, o.dt, o.t_end);
  o.trace_tol = c.get_double("evolution.trace_tol");
  o.local_error_tol = c.get_double("evolution.local_error_tol");
  o.store_states = c.get_bool("evolution.store_states");
  return o;
}

void add_base_provenance(ResultTable& table, const ScenarioConfig& cfg) {
  table.provenance.emplace_back("generator", "oscspin");
  table.provenance.emplace_back("mode", to_string(cfg.mode));
  table.provenance.emplace_back("config_hash", cfg.config.hash());
  table.provenance.emplace_back("kernels_backend",
                                oscspin::kernels::active().name);
  for (const auto& [key, value] : cfg.config.entries())
    table.provenance.emplace_back(key, value);
}

void append_coefficient_row(ResultTable& table, double method_id,
                            const CoefficientSet& s) {
  table.rows.push_back({method_id, s.omega_shift_sq, s.gamma, s.d0, s.d1,
                        s.d(), s.f0, s.f1, s.f()});
}

DensityMatrix joint_initial_state(const FockSpace& osc_space,
                                  const TlsJointSpec& spec) {
  // vacuum ⊗ thermal TLS at the run temperature
  const DensityMatrix osc = fock_vacuum(osc_space);
  if (spec.temperature == 0.0) {
    ComplexMatrix ground = minus_projector();
    return product_state(osc,
                         DensityMatrix(CompositeSpace{2}, std::move(ground)));
  }
  return product_state(osc, thermal_tls_state(spec.delta, spec.temperature));
}

}  // namespace

ResultTable run_coefficients(const ScenarioConfig& cfg) {
  const auto& c = cfg.config;
  const OscillatorSpec osc = oscillator_spec(c);
  const QuadratureSpec q = quadrature_spec(c);
  const double temperature = c.get_double("coefficients.temperature");

  ResultTable table;
  table.name = "coefficients";
  table.columns = {"method", "omega_shift_sq", "gamma", "d0",
                   "d1",     "d",              "f0",    "f1",
                   "f"};
  add_base_provenance(table, cfg);
  table.provenance.emplace_back("method_codes",
                                "0=closed_form 1=quadrature 2=qbm");

  if (c.get("bath.kind") == "ohmic") {
    const OhmicDensity density = ohmic_density(c);
    const double d0 = resolve_d0(c, density, osc);
    append_coefficient_row(
        table, 0.0, coefficients_ohmic_closed(density, temperature, osc, d0, q));
    append_coefficient_row(
        table, 1.0,
        coefficients_quadrature(ohmic_spectral_density(density), temperature,
                                osc, d0, q, BathKind::spin));
    append_coefficient_row(table, 2.0,
                           qbm_coefficients(density, temperature, osc, q));
  } else if (c.get("bath.kind") == "discrete") {
    const DiscreteBath bath = discrete_bath(c);
    const double sigma = c.get_double("bath.gaussian_sigma");
    const SpectralDensity sd = gaussian_bath_density(bath, sigma);
    append_coefficient_row(
        table, 1.0,
        coefficients_quadrature(sd, temperature, osc, 0.0, q, BathKind::spin));
    table.provenance.emplace_back("bath_c0", fmt(bath_c0(bath)));
    table.provenance.emplace_back("mean_force",
                                  fmt(mean_force(bath, temperature)));
  } else {
    throw ConfigError("bath.kind must be ohmic or discrete");
  }
  return table;
}

ResultTable run_sweep_temperature(const ScenarioConfig& cfg) {
  const auto& c = cfg.config;
  const OscillatorSpec osc = oscillator_spec(c);
  const OhmicDensity density = ohmic_density(c);
  const QuadratureSpec q = quadrature_spec(c);
  const double d0 = resolve_d0(c, density, osc);

  const double t_min = c.get_double("sweep.t_min");
  const double t_max = c.get_double("sweep.t_max");
  const long points = c.get_long("sweep.points");
  if (points < 2 || t_max <= t_min)
    throw ConfigError("sweep: need points >= 2 and t_max > t_min");

  ResultTable table;
  table.name = "sweep_temperature";
  table.columns = {"temperature", "gamma_spin", "d_spin", "omega_shift_sq",
                   "f_spin",      "gamma_qbm",  "d_qbm"};
  add_base_provenance(table, cfg);

  table.rows.resize(static_cast<std::size_t>(points));
  parallel_for(static_cast<std::size_t>(points), cfg.jobs, [&](std::size_t k) {
    const double t =
        t_min + (t_max - t_min) * static_cast<double>(k) /
                    static_cast<double>(points - 1);
    const CoefficientSet spin =
        coefficients_ohmic_closed(density, t, osc, d0, q);
    const CoefficientSet qbm = qbm_coefficients(density, t, osc, q);
    table.rows[k] = {t,        spin.gamma, spin.d(), spin.omega_shift_sq,
                     spin.f(), qbm.gamma,  qbm.d()};
  });
  return table;
}

ResultTable run_fig2(const ScenarioConfig& cfg) {
  const auto& c = cfg.config;
  const OscillatorSpec osc = oscillator_spec(c);
  const OhmicDensity density = ohmic_density(c);
  const QuadratureSpec q = quadrature_spec(c);
  const double d0 = resolve_d0(c, density, osc);

  const double t_min = c.get_double("sweep.t_min");
  const double t_max = c.get_double("sweep.t_max");
  const long points = c.get_long("sweep.points");
  if (points < 2 || t_max <= t_min || t_min <= 0.0)
    throw ConfigError("fig2: need points >= 2 and t_max > t_min > 0");

  // zero-temperature normalizations
  const double gamma0_ref =
      coefficients_ohmic_closed(density, 0.0, osc, d0, q).gamma;
  const double d_qbm0 = qbm_zero_t_diffusion(density, osc);

  ResultTable table;
  table.name = "fig2";
  table.columns = {"temperature", "gamma_spin_ratio", "gamma_qbm_ratio",
                   "d_spin_ratio", "d_qbm_ratio"};
  add_base_provenance(table, cfg);
  table.provenance.emplace_back("gamma_zero_t", fmt(gamma0_ref));
  table.provenance.emplace_back("d_qbm_zero_t", fmt(d_qbm0));
  table.provenance.emplace_back("d0", fmt(d0));

  table.rows.resize(static_cast<std::size_t>(points));
  parallel_for(static_cast<std::size_t>(points), cfg.jobs, [&](std::size_t k) {
    const double t =
        t_min + (t_max - t_min) * static_cast<double>(k) /
                    static_cast<double>(points - 1);
    const CoefficientSet spin =
        coefficients_ohmic_closed(density, t, osc, d0, q);
    const CoefficientSet qbm = qbm_coefficients(density, t, osc, q);
    table.rows[k] = {t, spin.gamma / gamma0_ref, qbm.gamma / gamma0_ref,
                     spin.d() / d_qbm0, qbm.d() / d_qbm0};
  });
  return table;
}

namespace {

struct EvolveResult {
  Trajectory traj;
  std::vector<double> slaving;  // joint runs only
};

EvolveResult evolve_one(const ScenarioConfig& cfg, Mode mode,
                        double gamma_tls, double nbar) {
  const auto& c = cfg.config;
  const FockSpace osc_space(resolve_cutoff(c, cfg.mode));
  EvolveResult out;

  if (mode == Mode::evolve_joint) {
    const TlsJointSpec spec = tls_spec_from_nbar(c, gamma_tls, nbar);
    JointGenerator gen(spec, osc_space);
    IntegrationOptions opts = integration_options(c, true, gamma_tls);
    opts.observer = [&](double, const DensityMatrix& rho) {
      out.slaving.push_back(slaving_residual(rho, spec));
    };
    out.traj = integrate(gen, joint_initial_state(osc_space, spec), opts);
    return out;
  }

  if (mode == Mode::evolve_adiabatic) {
    const TlsJointSpec spec = tls_spec_from_nbar(c, gamma_tls, nbar);
    AdiabaticGenerator gen(spec.omega0, spec.big_gamma, osc_space);
    IntegrationOptions opts = integration_options(c, false, 0.0);
    const DensityMatrix rho0 = fock_state(
        osc_space, static_cast<std::size_t>(c.get_long("evolution.initial_fock")));
    out.traj = integrate(gen, rho0, opts);
    return out;
  }

  // Born-Markov oscillator evolution with closed-form ohmic coefficients.
  const OscillatorSpec osc = oscillator_spec(c);
  const OhmicDensity density = ohmic_density(c);
  const QuadratureSpec q = quadrature_spec(c);
  const double d0 = resolve_d0(c, density, osc);
  const CoefficientSet coeffs = coefficients_ohmic_closed(
      density, c.get_double("coefficients.temperature"), osc, d0, q);
  BornMarkovGenerator gen(osc, osc_space, coeffs);
  IntegrationOptions opts = integration_options(c, false, 0.0);
  const DensityMatrix rho0 = fock_state(
      osc_space, static_cast<std::size_t>(c.get_long("evolution.initial_fock")));
  out.traj = integrate(gen, rho0, opts);
  return out;
}

ResultTable trajectory_table(const ScenarioConfig& cfg,
                             const EvolveResult& result,
                             const std::string& name) {
  const Trajectory& tr = result.traj;
  ResultTable table;
  table.name = name;
  table.columns = {"t",      "n",     "x",       "p",
                   "var_x",  "purity", "trace",  "min_eig"};
  const bool with_slaving = !result.slaving.empty();
  if (with_slaving) table.columns.push_back("slaving_residual");
  add_base_provenance(table, cfg);
  table.provenance.emplace_back("resolved.dt", fmt(tr.dt));
  table.provenance.emplace_back("resolved.steps",
                                std::to_string(tr.steps));
  table.provenance.emplace_back("max_trace_drift", fmt(tr.max_trace_drift));
  table.provenance.emplace_back("max_local_error_rate",
                                fmt(tr.max_local_error_rate));
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    std::vector<double> row = {tr.times[i],  tr.n_mean[i], tr.x_mean[i],
                               tr.p_mean[i], tr.x_var[i],  tr.purity[i],
                               tr.trace[i],  tr.min_eig[i]};
    if (with_slaving) row.push_back(result.slaving[i]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

ResultTable run_evolve(const ScenarioConfig& cfg) {
  const auto& c = cfg.config;
  const double gamma_tls = c.get_double("tls.gamma");
  const double nbar = c.get_double("tls.nbar");
  EvolveResult result = evolve_one(cfg, cfg.mode, gamma_tls, nbar);
  return trajectory_table(cfg, result, to_string(cfg.mode));
}

std::vector<ResultTable> run_fig3(const ScenarioConfig& cfg) {
  const auto& c = cfg.config;
  const std::vector<double> gammas = c.get_list("tls.gamma_list");
  const std::vector<double> nbars = c.get_list("tls.nbar_list");
  const double t_end = c.get_double("evolution.t_end");
  const std::size_t cutoff = resolve_cutoff(c, cfg.mode);

  // truncation pre-flight: projected <N> + 6 sigma must fit below cutoff/2
  for (double gamma_tls : gammas)
    for (double nbar : nbars) {
      const TlsJointSpec spec = tls_spec_from_nbar(c, gamma_tls, nbar);
      const double projected = 2.0 * spec.big_gamma * t_end;
      const double sigma = std::sqrt(projected * (projected + 1.0));
      if (projected + 6.0 * sigma > 0.5 * static_cast<double>(cutoff))
        throw TruncationError(
            "fig3: cutoff " + std::to_string(cutoff) +
            " too small for projected <N> = " + std::to_string(projected) +
            " (+6 sigma) at gamma_tls = " + std::to_string(gamma_tls) +
            ", nbar = " + std::to_string(nbar));
    }

  struct Task {
    double gamma_tls, nbar;
  };
  std::vector<Task> tasks;
  for (double g : gammas)
    for (double n : nbars) tasks.push_back({g, n});

  std::vector<ResultTable> tables(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t k) {
    const auto [gamma_tls, nbar] = tasks[k];
    const TlsJointSpec spec = tls_spec_from_nbar(c, gamma_tls, nbar);

    EvolveResult full = evolve_one(cfg, Mode::evolve_joint, gamma_tls, nbar);
    // adiabatic comparator on the same sampling grid
    ScenarioConfig acfg = cfg;
    acfg.config.set_override("evolution.dt", fmt(full.traj.dt));
    acfg.config.set_override(
        "evolution.sample_every",
        std::to_string((full.traj.times.size() > 1)
                           ? static_cast<long>(std::llround(
                                 (full.traj.times[1] - full.traj.times[0]) /
                                 full.traj.dt))
                           : 1));
    EvolveResult adiab =
        evolve_one(acfg, Mode::evolve_adiabatic, gamma_tls, nbar);

    ResultTable table;
    std::ostringstream name;
    name << "fig3_gamma" << gamma_tls << "_nbar" << nbar;
    table.name = name.str();
    table.columns = {"t", "n_full", "n_adiabatic", "slaving_residual"};
    add_base_provenance(table, cfg);
    table.provenance.emplace_back("gamma_tls", fmt(gamma_tls));
    table.provenance.emplace_back("nbar", fmt(nbar));
    table.provenance.emplace_back("big_gamma", fmt(spec.big_gamma));
    table.provenance.emplace_back("resolved.dt", fmt(full.traj.dt));
    const std::size_t n =
        std::min(full.traj.times.size(), adiab.traj.times.size());
    for (std::size_t i = 0; i < n; ++i)
      table.rows.push_back({full.traj.times[i], full.traj.n_mean[i],
                            adiab.traj.n_mean[i], full.slaving[i]});
    tables[k] = std::move(table);
  });
  return tables;
}

VerifyReport run_verify(const ScenarioConfig& cfg) {
  const auto& c = cfg.config;
  VerifyReport report;
  auto add = [&](const std::string& name, double measured, double tol,
                 const std::string& detail = "") {
    const bool pass = measured <= tol;
    report.checks.push_back({name, pass, measured, tol, detail});
    report.all_pass = report.all_pass && pass;
  };

  // 1. Liouvillian equivalence for all three generators.
  {
    const double tol = c.get_double("verify.liouville_tol");
    std::mt19937 rng(777);
    std::normal_distribution<double> dist(0.0, 1.0);
    auto random_state = [&](std::size_t d) {
      ComplexMatrix g(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          g(i, j) = cplx(dist(rng), dist(rng));
      ComplexMatrix rho = g * g.adjoint();
      rho *= cplx(1.0 / rho.trace().real(), 0.0);
      return rho;
    };
    auto equivalence = [&](const Generator& gen) {
      const std::size_t d = gen.space().total_dim();
      const auto liou = liouvillian_from_rhs(
          [&gen](const ComplexMatrix& m) { return gen.rhs(m); }, d);
      double worst = 0.0;
      for (int rep = 0; rep < 3; ++rep) {
        const ComplexMatrix rho = random_state(d);
        worst = std::max(worst,
                         max_abs_diff(liou.apply(rho), gen.rhs(rho)));
      }
      return worst;
    };
    CoefficientSet coeffs;
    coeffs.omega_shift_sq = -0.3;
    coeffs.gamma = 0.2;
    coeffs.d1 = 0.5;
    coeffs.f1 = -0.1;
    const OscillatorSpec osc = oscillator_spec(c);
    add("liouville_equivalence_bm",
        equivalence(BornMarkovGenerator(osc, FockSpace(6), coeffs)), tol);
    add("liouville_equivalence_joint",
        equivalence(
            JointGenerator(tls_spec_from_nbar(c, 4.0, 0.5), FockSpace(5))),
        tol);
    add("liouville_equivalence_adiabatic",
        equivalence(AdiabaticGenerator(1.0, 0.25, FockSpace(8))), tol);
  }

  // 2. Lindblad dissipativity of the joint generator spectrum.
  {
    const double tol = c.get_double("verify.dissipativity_tol");
    JointGenerator gen(tls_spec_from_nbar(c, 3.0, 0.5), FockSpace(5));
    if (c.get_bool("verify.flip_dissipator_sign"))
      gen.set_dissipator_sign(-1.0);
    const auto liou = liouvillian_from_rhs(
        [&gen](const ComplexMatrix& m) { return gen.rhs(m); },
        gen.space().total_dim());
    double max_real = -1e300;
    for (const cplx& ev : liou.eigenvalues())
      max_real = std::max(max_real, ev.real());
    add("lindblad_dissipativity", max_real, tol,
        "max Re(eigenvalue) of the joint Liouvillian");
  }

  // 3. Coefficient quadrature crosscheck (three routes).
  {
    const double tol = c.get_double("verify.crosscheck_tol");
    const auto rep = quadrature_crosscheck(
        ohmic_density(c), c.get_double("coefficients.temperature"),
        oscillator_spec(c), quadrature_spec(c), tol);
    add("quadrature_crosscheck_gamma", rep.max_pairwise_gamma, tol);
    add("quadrature_crosscheck_d1", rep.max_pairwise_d1, tol);
  }

  // 4. Correlation function: closed form vs matrix-trace oracle.
  {
    const double tol = c.get_double("verify.correlation_tol");
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const int nspins = 1 + static_cast<int>(uni(rng) * 8.0);
      std::vector<SpinParams> spins;
      for (int s = 0; s < nspins; ++s)
        spins.emplace_back(-2.0 + 4.0 * uni(rng), 0.05 + 3.0 * uni(rng),
                           -1.0 + 2.0 * uni(rng));
      const DiscreteBath bath(std::move(spins));
      const double temperature =
          (rep % 10 == 0) ? 0.0 : 0.01 * std::pow(10000.0, uni(rng));
      const double tau = 50.0 * uni(rng);
      const auto closed = correlation_closed(bath, temperature, tau);
      const auto oracle = correlation_oracle(bath, temperature, tau);
      worst = std::max(worst, std::abs(closed - oracle));
    }
    add("correlation_closed_vs_oracle", worst, tol,
        "100 randomized baths, <= 8 spins");
  }

  // 5. Detailed balance of the joint dissipators (g = 0).
  {
    const double tol = c.get_double("verify.detailed_balance_tol");
    TlsJointSpec spec = tls_spec_from_nbar(c, 2.0, 0.5);
    spec.g = 0.0;
    JointGenerator gen(spec, FockSpace(2));
    DensityMatrix rho0 = product_state(
        fock_vacuum(FockSpace(2)),
        DensityMatrix(CompositeSpace{2},
                      cplx(0.5, 0.0) * ComplexMatrix::identity(2)));
    IntegrationOptions opts;
    opts.dt = 0.005;
    opts.t_end = 20.0;
    opts.sample_every = 400;
    opts.store_states = true;
    Trajectory traj = integrate(gen, rho0, opts);
    const DensityMatrix& final_state = traj.states.back();
    const ComplexMatrix proj_p =
        tensor(ComplexMatrix::identity(2), plus_projector());
    const ComplexMatrix proj_m =
        tensor(ComplexMatrix::identity(2), minus_projector());
    const double p_plus = expectation(proj_p, final_state).real();
    const double p_minus = expectation(proj_m, final_state).real();
    const double target = spec.nbar / (spec.nbar + 1.0);
    add("detailed_balance", std::abs(p_plus / p_minus - target), tol,
        "joint steady state population ratio vs nbar/(nbar+1)");
  }

  // 6. Adiabatic heating slope d<N>/dt = 2 Gamma.
  {
    const double tol = c.get_double("verify.slope_tol");
    const double big_gamma = 0.2;
    AdiabaticGenerator gen(1.0, big_gamma, FockSpace(60));
    IntegrationOptions opts;
    opts.dt = 0.01;
    opts.t_end = 5.0;
    opts.sample_every = 10;
    Trajectory traj = integrate(gen, fock_vacuum(FockSpace(60)), opts);
    const LinearFit fit = heating_rate_estimate(traj, 1.0, 5.0);
    add("adiabatic_slope", std::abs(fit.slope / (2.0 * big_gamma) - 1.0), tol,
        "fitted d<N>/dt vs 2 Gamma");
  }

  return report;
}

int run_scenario(const ScenarioConfig& cfg) {
  try {
    switch (cfg.mode) {
      case Mode::coefficients: {
        for (const auto& path : write_table(cfg, run_coefficients(cfg)))
          std::cout << "wrote " << path << "\n";
        return 0;
      }
      case Mode::sweep_temperature: {
        for (const auto& path : write_table(cfg, run_sweep_temperature(cfg)))
          std::cout << "wrote " << path << "\n";
        return 0;
      }
      case Mode::evolve_bm:
      case Mode::evolve_joint:
      case Mode::evolve_adiabatic: {
        for (const auto& path : write_table(cfg, run_evolve(cfg)))
          std::cout << "wrote " << path << "\n";
        return 0;
      }
      case Mode::fig2: {
        for (const auto& path : write_table(cfg, run_fig2(cfg)))
          std::cout << "wrote " << path << "\n";
        return 0;
      }
      case Mode::fig3: {
        for (const auto& table : run_fig3(cfg))
          for (const auto& path : write_table(cfg, table))
            std::cout << "wrote " << path << "\n";
        return 0;
      }
      case Mode::verify: {
        const VerifyReport report = run_verify(cfg);
        for (const auto& check : report.checks) {
          std::printf("%-34s %s  measured=%.3e  tol=%.3e%s%s\n",
                      check.name.c_str(), check.pass ? "PASS" : "FAIL",
                      check.measured, check.tolerance,
                      check.detail.empty() ? "" : "  ",
                      check.detail.c_str());
        }
        std::cout << (report.all_pass ? "verification passed"
                                      : "verification FAILED")
                  << "\n";
        return report.all_pass ? 0 : 1;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    std::cerr << "numerical gate: " << e.what() << "\n";
    return 3;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical gate: " << e.what() << "\n";
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical gate: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace oscspin::cli
