#include "oscspin/oracle.hpp"

#include <cmath>
#include <random>

#include "oscspin/linalg.hpp"

namespace oscspin {

std::vector<cplx> LiouvillianMatrix::stack(const ComplexMatrix& rho) {
  const std::size_t d = rho.dim();
  std::vector<cplx> v(d * d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) v[c * d + r] = rho(r, c);
  return v;
}

ComplexMatrix LiouvillianMatrix::unstack(const std::vector<cplx>& v,
                                         std::size_t d) {
  ComplexMatrix rho(d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) rho(r, c) = v[c * d + r];
  return rho;
}

ComplexMatrix LiouvillianMatrix::apply(const ComplexMatrix& rho) const {
  if (rho.dim() != state_dim)
    throw DimensionError("LiouvillianMatrix::apply: dimension mismatch");
  const std::vector<cplx> v = stack(rho);
  const std::size_t d2 = v.size();
  std::vector<cplx> out(d2, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < d2; ++i) {
    cplx acc(0.0, 0.0);
    const cplx* row = matrix.data() + i * d2;
    for (std::size_t j = 0; j < d2; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return unstack(out, state_dim);
}

std::vector<cplx> LiouvillianMatrix::eigenvalues() const {
  return linalg::complex_eigenvalues(matrix);
}

LiouvillianMatrix liouvillian_from_rhs(const RhsFn& rhs, std::size_t dim) {
  if (dim > 64)
    throw DomainError(
        "liouvillian_from_rhs: refusing dims above 64 (memory bound)");

  // Linearity check on random Hermitian states.
  std::mt19937 rng(12345);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto random_herm = [&] {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        m(i, j) = cplx(dist(rng), dist(rng));
    m.hermitize();
    return m;
  };
  const ComplexMatrix r1 = random_herm();
  const ComplexMatrix r2 = random_herm();
  const ComplexMatrix lhs = rhs(r1 + r2);
  ComplexMatrix sum = rhs(r1);
  sum += rhs(r2);
  const double scale = std::max(1.0, sum.max_abs());
  if (max_abs_diff(lhs, sum) > 1e-10 * scale)
    throw DomainError("liouvillian_from_rhs: rhs is not linear");

  LiouvillianMatrix liou;
  liou.state_dim = dim;
  liou.matrix = ComplexMatrix(dim * dim);
  ComplexMatrix unit(dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) {
      unit(r, c) = 1.0;
      const ComplexMatrix col = rhs(unit);
      unit(r, c) = 0.0;
      const std::size_t j = c * dim + r;
      for (std::size_t cc = 0; cc < dim; ++cc)
        for (std::size_t rr = 0; rr < dim; ++rr)
          liou.matrix(cc * dim + rr, j) = col(rr, cc);
    }
  return liou;
}

ExactJointSpec::ExactJointSpec(OscillatorSpec o, DiscreteBath b,
                               std::size_t c, double t)
    : osc(o), bath(std::move(b)), cutoff(c), temperature(t) {
  if (bath.spins.size() > 4)
    throw DomainError("ExactJointSpec: at most 4 spins");
  if (temperature < 0.0)
    throw DomainError("ExactJointSpec: negative temperature");
  if (cutoff < 2) throw DomainError("ExactJointSpec: cutoff must be >= 2");
  if (total_dim() > 512)
    throw DomainError("ExactJointSpec: total dimension above 512");
}

std::size_t ExactJointSpec::total_dim() const {
  return cutoff << bath.spins.size();
}

namespace {

// Joint Hamiltonian on (oscillator ⊗ spin_1 ⊗ ... ⊗ spin_N).
ComplexMatrix joint_hamiltonian(const ExactJointSpec& spec, double g_scale) {
  const std::size_t nspins = spec.bath.spins.size();
  const FockSpace osc_space(spec.cutoff);
  const double m = spec.osc.mass, w0 = spec.osc.omega0;

  const ComplexMatrix x_osc =
      std::sqrt(1.0 / (2.0 * m * w0)) * dimensionless_position(osc_space);
  const ComplexMatrix p_osc =
      std::sqrt(m * w0 / 2.0) * dimensionless_momentum(osc_space);
  ComplexMatrix h_osc = (1.0 / (2.0 * m)) * (p_osc * p_osc);
  h_osc.add_scaled(0.5 * m * w0 * w0, x_osc * x_osc);

  const std::size_t spin_dim = std::size_t(1) << nspins;
  ComplexMatrix h = tensor(h_osc, ComplexMatrix::identity(spin_dim));

  // per-spin Hamiltonians and the collective force operator
  ComplexMatrix force(spin_dim);
  for (std::size_t k = 0; k < nspins; ++k) {
    const auto& s = spec.bath.spins[k];
    ComplexMatrix hk(2);
    hk(0, 0) = 0.5 * s.omega;
    hk(0, 1) = 0.5 * s.delta;
    hk(1, 0) = 0.5 * s.delta;
    hk(1, 1) = -0.5 * s.omega;
    ComplexMatrix sz(2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;

    ComplexMatrix hk_full = ComplexMatrix::identity(1);
    ComplexMatrix sz_full = ComplexMatrix::identity(1);
    for (std::size_t j = 0; j < nspins; ++j) {
      const ComplexMatrix& hpart = (j == k) ? hk : ComplexMatrix::identity(2);
      const ComplexMatrix& spart = (j == k) ? sz : ComplexMatrix::identity(2);
      hk_full = tensor(hk_full, hpart);
      sz_full = tensor(sz_full, spart);
    }
    h += tensor(ComplexMatrix::identity(spec.cutoff), hk_full);
    force.add_scaled(g_scale * s.g, sz_full);
  }
  h += tensor(x_osc, force);
  return h;
}

// Thermal product state of the bath spins.
ComplexMatrix bath_thermal_state(const ExactJointSpec& spec) {
  ComplexMatrix rho = ComplexMatrix::identity(1);
  for (const auto& s : spec.bath.spins) {
    const auto [wt, theta] = tilde_frequency(s);
    ComplexMatrix u(2);
    u(0, 0) = std::cos(0.5 * theta);
    u(1, 0) = std::sin(0.5 * theta);
    u(0, 1) = -std::sin(0.5 * theta);
    u(1, 1) = std::cos(0.5 * theta);
    double p_plus, p_minus;
    if (spec.temperature == 0.0) {
      p_plus = 0.0;
      p_minus = 1.0;
    } else {
      p_plus = 1.0 / (1.0 + std::exp(wt / spec.temperature));
      p_minus = 1.0 - p_plus;
    }
    ComplexMatrix occ(2);
    occ(0, 0) = p_plus;
    occ(1, 1) = p_minus;
    rho = tensor(rho, (u * occ) * u.adjoint());
  }
  return rho;
}

CompositeSpace joint_space(const ExactJointSpec& spec) {
  CompositeSpace space;
  space.factors.push_back(spec.cutoff);
  for (std::size_t i = 0; i < spec.bath.spins.size(); ++i)
    space.factors.push_back(2);
  return space;
}

}  // namespace

DensityMatrix exact_joint_evolution(const ExactJointSpec& spec,
                                    double g_scale,
                                    const DensityMatrix& rho_osc0, double t) {
  auto states = exact_joint_trajectory(spec, g_scale, rho_osc0, {t});
  return std::move(states.front());
}

std::vector<DensityMatrix> exact_joint_trajectory(
    const ExactJointSpec& spec, double g_scale, const DensityMatrix& rho_osc0,
    const std::vector<double>& times) {
  if (rho_osc0.dim() != spec.cutoff)
    throw DimensionError("exact_joint: oscillator state has wrong cutoff");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw DomainError("exact_joint: times must be strictly increasing");

  const ComplexMatrix h = joint_hamiltonian(spec, g_scale);
  const CompositeSpace space = joint_space(spec);
  ComplexMatrix rho = tensor(rho_osc0.matrix, bath_thermal_state(spec));

  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  double t_prev = 0.0;
  for (double t : times) {
    const double dt = t - t_prev;
    if (dt > 0.0) {
      ComplexMatrix u = linalg::expm(cplx(0.0, -dt) * h);
      rho = (u * rho) * u.adjoint();
    }
    t_prev = t;
    DensityMatrix joint(space, rho);
    out.push_back(partial_trace(joint, 0));
  }
  return out;
}

double exact_joint_energy(const ExactJointSpec& spec, double g_scale,
                          const DensityMatrix& rho_osc0, double t) {
  const ComplexMatrix h = joint_hamiltonian(spec, g_scale);
  ComplexMatrix rho = tensor(rho_osc0.matrix, bath_thermal_state(spec));
  if (t > 0.0) {
    ComplexMatrix u = linalg::expm(cplx(0.0, -t) * h);
    rho = (u * rho) * u.adjoint();
  }
  return trace_of_product(h, rho).real();
}

CrosscheckReport quadrature_crosscheck(const OhmicDensity& density,
                                       double temperature,
                                       const OscillatorSpec& osc,
                                       const QuadratureSpec& spec,
                                       double tol) {
  const SpectralDensity sd = ohmic_spectral_density(density);
  CoefficientSet tau_route = coefficients_quadrature(
      sd, temperature, osc, 0.0, spec, BathKind::spin);
  const FreqRouteValues freq = coefficients_frequency_route(
      sd, temperature, osc, spec, BathKind::spin);
  const CoefficientSet closed =
      coefficients_ohmic_closed(density, temperature, osc, 0.0, spec);

  CrosscheckReport rep{};
  rep.gamma_tau = tau_route.gamma;
  rep.gamma_freq = freq.gamma;
  rep.gamma_closed = closed.gamma;
  rep.d1_tau = tau_route.d1;
  rep.d1_freq = freq.d1;
  rep.d1_closed = closed.d1;

  auto max_pairwise = [](double a, double b, double c) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    const double ab = std::abs(a - b), bc = std::abs(b - c),
                 ac = std::abs(a - c);
    return std::max({ab, bc, ac}) / scale;
  };
  rep.max_pairwise_gamma =
      max_pairwise(rep.gamma_tau, rep.gamma_freq, rep.gamma_closed);
  rep.max_pairwise_d1 = max_pairwise(rep.d1_tau, rep.d1_freq, rep.d1_closed);
  rep.pass = rep.max_pairwise_gamma <= tol && rep.max_pairwise_d1 <= tol;
  return rep;
}

}  // namespace oscspin
