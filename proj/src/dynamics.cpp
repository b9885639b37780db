#include "oscspin/dynamics.hpp"

#include <cmath>

#include "oscspin/linalg.hpp"

namespace oscspin {

namespace {

const cplx kI(0.0, 1.0);

double derived_big_gamma(double g, double gamma_tls, double nbar) {
  if (gamma_tls <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * g * g / (gamma_tls * (2.0 * nbar + 1.0));
}

void check_space(const Generator& gen, const ComplexMatrix& rho,
                 const char* what) {
  if (rho.dim() != gen.space().total_dim())
    throw DimensionError(std::string(what) + ": state dimension " +
                         std::to_string(rho.dim()) + " does not match space " +
                         std::to_string(gen.space().total_dim()));
}

}  // namespace

TlsJointSpec TlsJointSpec::from_temperature(double omega0, double delta,
                                            double g, double gamma_tls,
                                            double temperature,
                                            double hamiltonian_factor) {
  if (delta <= 0.0)
    throw DomainError("TlsJointSpec: delta must be > 0 for a thermal spec");
  if (temperature < 0.0) throw DomainError("TlsJointSpec: T must be >= 0");
  TlsJointSpec s;
  s.omega0 = omega0;
  s.delta = delta;
  s.g = g;
  s.gamma_tls = gamma_tls;
  s.temperature = temperature;
  s.nbar = temperature == 0.0
               ? 0.0
               : 1.0 / std::expm1(delta / (2.0 * temperature));
  s.big_gamma = derived_big_gamma(g, gamma_tls, s.nbar);
  s.hamiltonian_factor = hamiltonian_factor;
  return s;
}

TlsJointSpec TlsJointSpec::from_nbar(double omega0, double delta, double g,
                                     double gamma_tls, double nbar,
                                     double hamiltonian_factor) {
  if (nbar < 0.0) throw DomainError("TlsJointSpec: nbar must be >= 0");
  TlsJointSpec s;
  s.omega0 = omega0;
  s.delta = delta;
  s.g = g;
  s.gamma_tls = gamma_tls;
  s.nbar = nbar;
  s.temperature =
      nbar == 0.0 ? 0.0 : delta / (2.0 * std::log1p(1.0 / nbar));
  s.big_gamma = derived_big_gamma(g, gamma_tls, nbar);
  s.hamiltonian_factor = hamiltonian_factor;
  return s;
}

// ---- Born-Markov generator --------------------------------------------

BornMarkovGenerator::BornMarkovGenerator(const OscillatorSpec& osc,
                                         const FockSpace& space,
                                         const CoefficientSet& coeffs)
    : space_{space.cutoff}, coeffs_(coeffs) {
  const double m = osc.mass, w0 = osc.omega0;
  x_ = std::sqrt(1.0 / (2.0 * m * w0)) * dimensionless_position(space);
  p_ = std::sqrt(m * w0 / 2.0) * dimensionless_momentum(space);
  // H = P^2/2M + M(w0^2 + shift)/2 X^2
  h_ = (1.0 / (2.0 * m)) * (p_ * p_);
  h_.add_scaled(0.5 * m * (w0 * w0 + coeffs.omega_shift_sq), x_ * x_);
  xb_ = BandedOperator::from_dense(x_);
  pb_ = BandedOperator::from_dense(p_);
  x2b_ = BandedOperator::from_dense(x_ * x_);
  hb_ = BandedOperator::from_dense(h_);
}

ComplexMatrix BornMarkovGenerator::rhs(const ComplexMatrix& rho) const {
  check_space(*this, rho, "bm_rhs");
  const std::size_t n = rho.dim();
  const double gamma = coeffs_.gamma, dcoef = coeffs_.d(), fcoef = coeffs_.f();
  ComplexMatrix out(n);
  // -i [H, rho]
  hb_.apply_left(-kI, rho, out);
  hb_.apply_right(kI, rho, out);
  // -i gamma [X, {P, rho}]
  if (gamma != 0.0) {
    ComplexMatrix s(n);
    pb_.apply_left(1.0, rho, s);
    pb_.apply_right(1.0, rho, s);
    xb_.apply_left(-kI * gamma, s, out);
    xb_.apply_right(kI * gamma, s, out);
  }
  // -D [X, [X, rho]] = -D (X^2 rho + rho X^2 - 2 X rho X)
  if (dcoef != 0.0) {
    x2b_.apply_left(-dcoef, rho, out);
    x2b_.apply_right(-dcoef, rho, out);
    ComplexMatrix t(n);
    xb_.apply_left(1.0, rho, t);
    xb_.apply_right(2.0 * dcoef, t, out);
  }
  // -f [X, [P, rho]]
  if (fcoef != 0.0) {
    ComplexMatrix z(n);
    pb_.apply_left(1.0, rho, z);
    pb_.apply_right(-1.0, rho, z);
    xb_.apply_left(cplx(-fcoef, 0.0), z, out);
    xb_.apply_right(cplx(fcoef, 0.0), z, out);
  }
  return out;
}

ComplexMatrix BornMarkovGenerator::rhs_dense(const ComplexMatrix& rho) const {
  check_space(*this, rho, "bm_rhs");
  ComplexMatrix out = (-kI) * commutator(h_, rho);
  out.add_scaled(-kI * coeffs_.gamma,
                 commutator(x_, anticommutator(p_, rho)));
  out.add_scaled(-coeffs_.d(), commutator(x_, commutator(x_, rho)));
  out.add_scaled(-coeffs_.f(), commutator(x_, commutator(p_, rho)));
  return out;
}

// ---- Joint oscillator-TLS generator -----------------------------------

JointGenerator::JointGenerator(const TlsJointSpec& spec,
                               const FockSpace& osc_space)
    : space_{osc_space.cutoff, 2}, spec_(spec) {
  if (spec.gamma_tls < 0.0)
    throw DomainError("JointGenerator: gamma_tls must be >= 0");
  rate_down_ = spec.gamma_tls * (spec.nbar + 1.0);
  rate_up_ = spec.gamma_tls * spec.nbar;

  const ComplexMatrix id_osc = ComplexMatrix::identity(osc_space.cutoff);
  const ComplexMatrix id_tls = ComplexMatrix::identity(2);
  const ComplexMatrix n_osc = number_operator(osc_space);
  const ComplexMatrix x_osc = dimensionless_position(osc_space);

  h_ = spec.omega0 * tensor(n_osc, id_tls);
  h_.add_scaled(spec.hamiltonian_factor * spec.delta,
                tensor(id_osc, pauli(PauliAxis::x)));
  h_.add_scaled(spec.g, tensor(x_osc, pauli(PauliAxis::z)));

  lm_ = tensor(id_osc, sigma_lower());
  lp_ = tensor(id_osc, sigma_raise());
  km_ = lm_.adjoint() * lm_;  // = I ⊗ |+><+|
  kp_ = lp_.adjoint() * lp_;

  hb_ = BandedOperator::from_dense(h_);
  lmb_ = BandedOperator::from_dense(lm_);
  lmb_dag_ = BandedOperator::from_dense(lm_.adjoint());
  lpb_ = BandedOperator::from_dense(lp_);
  lpb_dag_ = BandedOperator::from_dense(lp_.adjoint());
  kmb_ = BandedOperator::from_dense(km_);
  kpb_ = BandedOperator::from_dense(kp_);
}

ComplexMatrix JointGenerator::rhs(const ComplexMatrix& rho) const {
  check_space(*this, rho, "joint_rhs");
  const std::size_t n = rho.dim();
  ComplexMatrix out(n);
  hb_.apply_left(-kI, rho, out);
  hb_.apply_right(kI, rho, out);
  ComplexMatrix t(n);
  if (rate_down_ != 0.0) {
    const double r = dissipator_sign_ * rate_down_;
    t *= 0.0;
    lmb_.apply_left(1.0, rho, t);
    lmb_dag_.apply_right(r, t, out);
    kmb_.apply_left(-0.5 * r, rho, out);
    kmb_.apply_right(-0.5 * r, rho, out);
  }
  if (rate_up_ != 0.0) {
    const double r = dissipator_sign_ * rate_up_;
    t *= 0.0;
    lpb_.apply_left(1.0, rho, t);
    lpb_dag_.apply_right(r, t, out);
    kpb_.apply_left(-0.5 * r, rho, out);
    kpb_.apply_right(-0.5 * r, rho, out);
  }
  return out;
}

ComplexMatrix JointGenerator::rhs_dense(const ComplexMatrix& rho) const {
  check_space(*this, rho, "joint_rhs");
  ComplexMatrix out = (-kI) * commutator(h_, rho);
  out.add_scaled(dissipator_sign_ * rate_down_, dissipator(lm_, rho));
  out.add_scaled(dissipator_sign_ * rate_up_, dissipator(lp_, rho));
  return out;
}

// ---- Adiabatic generator ----------------------------------------------

AdiabaticGenerator::AdiabaticGenerator(double omega0, double big_gamma,
                                       const FockSpace& space)
    : space_{space.cutoff}, omega0_(omega0), big_gamma_(big_gamma) {
  if (!(big_gamma >= 0.0) || !std::isfinite(big_gamma))
    throw DomainError("AdiabaticGenerator: big_gamma must be finite and >= 0");
  n_ = number_operator(space);
  x_ = dimensionless_position(space);
  nb_ = BandedOperator::from_dense(n_);
  xb_ = BandedOperator::from_dense(x_);
  x2b_ = BandedOperator::from_dense(x_ * x_);
}

ComplexMatrix AdiabaticGenerator::rhs(const ComplexMatrix& rho) const {
  check_space(*this, rho, "adiabatic_rhs");
  const std::size_t n = rho.dim();
  ComplexMatrix out(n);
  nb_.apply_left(-kI * omega0_, rho, out);
  nb_.apply_right(kI * omega0_, rho, out);
  if (big_gamma_ != 0.0) {
    x2b_.apply_left(-big_gamma_, rho, out);
    x2b_.apply_right(-big_gamma_, rho, out);
    ComplexMatrix t(n);
    xb_.apply_left(1.0, rho, t);
    xb_.apply_right(2.0 * big_gamma_, t, out);
  }
  return out;
}

ComplexMatrix AdiabaticGenerator::rhs_dense(const ComplexMatrix& rho) const {
  check_space(*this, rho, "adiabatic_rhs");
  ComplexMatrix out = (-kI * omega0_) * commutator(n_, rho);
  out.add_scaled(-big_gamma_, commutator(x_, commutator(x_, rho)));
  return out;
}

// ---- Integration -------------------------------------------------------

namespace {

struct ObservableSet {
  ComplexMatrix n, x, p, x2;
};

ObservableSet make_observables(const CompositeSpace& space) {
  const FockSpace osc(space.factors.at(0));
  ObservableSet obs;
  ComplexMatrix n = number_operator(osc);
  ComplexMatrix x = dimensionless_position(osc);
  ComplexMatrix p = dimensionless_momentum(osc);
  if (space.factors.size() == 1) {
    obs.n = std::move(n);
    obs.x = std::move(x);
    obs.p = std::move(p);
  } else {
    std::size_t rest = 1;
    for (std::size_t f = 1; f < space.factors.size(); ++f)
      rest *= space.factors[f];
    const ComplexMatrix id_rest = ComplexMatrix::identity(rest);
    obs.n = tensor(n, id_rest);
    obs.x = tensor(x, id_rest);
    obs.p = tensor(p, id_rest);
  }
  obs.x2 = obs.x * obs.x;
  return obs;
}

ComplexMatrix rk4_step(const Generator& gen, const ComplexMatrix& rho,
                       double h) {
  ComplexMatrix k1 = gen.rhs(rho);
  ComplexMatrix tmp = rho;
  tmp.add_scaled(0.5 * h, k1);
  ComplexMatrix k2 = gen.rhs(tmp);
  tmp = rho;
  tmp.add_scaled(0.5 * h, k2);
  ComplexMatrix k3 = gen.rhs(tmp);
  tmp = rho;
  tmp.add_scaled(h, k3);
  ComplexMatrix k4 = gen.rhs(tmp);
  ComplexMatrix out = rho;
  out.add_scaled(h / 6.0, k1);
  out.add_scaled(h / 3.0, k2);
  out.add_scaled(h / 3.0, k3);
  out.add_scaled(h / 6.0, k4);
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

}  // namespace

Trajectory integrate(const Generator& gen, const DensityMatrix& rho0,
                     const IntegrationOptions& opts) {
  if (opts.dt <= 0.0) throw DomainError("integrate: dt must be > 0");
  if (opts.t_end <= 0.0) throw DomainError("integrate: t_end must be > 0");
  if (opts.sample_every < 1)
    throw DomainError("integrate: sample_every must be >= 1");
  if (!(rho0.space == gen.space()))
    throw DimensionError("integrate: initial state lives on the wrong space");

  const ObservableSet obs = make_observables(gen.space());
  Trajectory traj;
  traj.dt = opts.dt;
  traj.min_eigenvalue_overall = 1.0;

  const std::size_t nsteps =
      static_cast<std::size_t>(std::llround(std::ceil(
          opts.t_end / opts.dt - 1e-12)));

  ComplexMatrix rho = rho0.matrix;

  auto record = [&](double t) {
    const double tr = rho.trace().real();
    const double drift = std::abs(tr - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > opts.trace_tol)
      throw IntegrationError("integrate: trace drift " +
                                 std::to_string(drift) + " at t = " +
                                 std::to_string(t),
                             t);
    const double herm = hermiticity_defect(rho);
    traj.max_hermiticity_defect = std::max(traj.max_hermiticity_defect, herm);

    traj.times.push_back(t);
    traj.n_mean.push_back(trace_of_product(obs.n, rho).real());
    const double xm = trace_of_product(obs.x, rho).real();
    traj.x_mean.push_back(xm);
    traj.p_mean.push_back(trace_of_product(obs.p, rho).real());
    traj.x_var.push_back(trace_of_product(obs.x2, rho).real() - xm * xm);
    const double pur = [&] {
      double s = 0.0;
      for (std::size_t i = 0; i < rho.size(); ++i)
        s += std::norm(rho.data()[i]);
      return s;
    }();
    traj.purity.push_back(pur);
    traj.trace.push_back(tr);
    const double mineig = linalg::min_eigenvalue_hermitian(rho);
    traj.min_eig.push_back(mineig);
    traj.min_eigenvalue_overall =
        std::min(traj.min_eigenvalue_overall, mineig);
    DensityMatrix snapshot(gen.space(), rho);
    if (opts.store_states) traj.states.push_back(snapshot);
    if (opts.observer) opts.observer(t, snapshot);
  };

  record(0.0);

  std::size_t since_sample = 0;
  for (std::size_t step = 0; step < nsteps; ++step) {
    const double t0 = static_cast<double>(step) * opts.dt;
    const double h = std::min(opts.dt, opts.t_end - t0);
    const bool sample_next = (since_sample + 1 ==
                              static_cast<std::size_t>(opts.sample_every)) ||
                             step + 1 == nsteps;
    if (sample_next) {
      // step-doubling: one full step vs two half steps; continue from the
      // half-step result.
      ComplexMatrix full = rk4_step(gen, rho, h);
      ComplexMatrix half = rk4_step(gen, rho, 0.5 * h);
      half = rk4_step(gen, half, 0.5 * h);
      double diff = 0.0;
      for (std::size_t i = 0; i < full.size(); ++i)
        diff += std::norm(full.data()[i] - half.data()[i]);
      const double rate = std::sqrt(diff) / h;
      traj.max_local_error_rate = std::max(traj.max_local_error_rate, rate);
      if (rate > opts.local_error_tol)
        throw IntegrationError(
            "integrate: step-doubling error rate " + std::to_string(rate) +
                " at t = " + std::to_string(t0 + h),
            t0 + h);
      rho = std::move(half);
    } else {
      rho = rk4_step(gen, rho, h);
    }
    rho.hermitize();
    since_sample += 1;
    if (sample_next) {
      record(t0 + h);
      since_sample = 0;
    }
  }
  traj.steps = nsteps;
  return traj;
}

LinearFit heating_rate_estimate(const Trajectory& traj, double window_start,
                                double window_end) {
  LinearFit fit;
  double st = 0.0, sn = 0.0, stt = 0.0, stn = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < window_start || t > window_end) continue;
    pts.emplace_back(t, traj.n_mean[i]);
  }
  if (pts.size() < 4)
    throw DomainError("heating_rate_estimate: fewer than 4 samples in window");
  const double inv = 1.0 / static_cast<double>(pts.size());
  for (auto& [t, n] : pts) {
    st += t;
    sn += n;
    stt += t * t;
    stn += t * n;
  }
  const double denom = stt - st * st * inv;
  fit.slope = (stn - st * sn * inv) / denom;
  fit.intercept = (sn - fit.slope * st) * inv;
  double ss = 0.0;
  for (auto& [t, n] : pts) {
    const double r = n - (fit.intercept + fit.slope * t);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss * inv);
  fit.points = pts.size();
  return fit;
}

double slaving_residual(const DensityMatrix& rho, const TlsJointSpec& spec) {
  if (rho.space.factors.size() != 2 || rho.space.factors[1] != 2)
    throw DimensionError("slaving_residual: expected (oscillator ⊗ TLS)");
  const std::size_t nosc = rho.space.factors[0];
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // |+> = (1, 1)/sqrt2, |-> = (1, -1)/sqrt2 in the computational basis
  const cplx vp[2] = {inv_sqrt2, inv_sqrt2};
  const cplx vm[2] = {inv_sqrt2, -inv_sqrt2};

  auto block = [&](const cplx* va, const cplx* vb) {
    ComplexMatrix b(nosc);
    for (std::size_t m = 0; m < nosc; ++m)
      for (std::size_t n = 0; n < nosc; ++n) {
        cplx v(0.0, 0.0);
        for (int s = 0; s < 2; ++s)
          for (int sp = 0; sp < 2; ++sp)
            v += std::conj(va[s]) * rho.matrix(2 * m + s, 2 * n + sp) *
                 vb[sp];
        b(m, n) = v;
      }
    return b;
  };

  const ComplexMatrix rho_pm = block(vp, vm);
  const ComplexMatrix rho_pp = block(vp, vp);
  const ComplexMatrix rho_mm = block(vm, vm);

  const ComplexMatrix x = dimensionless_position(FockSpace(nosc));
  const cplx coef =
      -2.0 * kI * spec.g / (spec.gamma_tls * (2.0 * spec.nbar + 1.0));
  ComplexMatrix pred = x * rho_mm;
  matmul_acc(cplx(-1.0, 0.0), rho_pp, x, pred);
  pred *= coef;

  const double denom = rho_pm.frobenius_norm();
  ComplexMatrix dev = rho_pm;
  dev -= pred;
  const double resid = dev.frobenius_norm();
  return denom > 0.0 ? resid / denom : resid;
}

}  // namespace oscspin
