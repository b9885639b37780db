#pragma once

// Independent brute-force verifiers: vectorized Liouvillian equivalence,
// exact unitary evolution of oscillator + few discrete spins, and the
// three-way quadrature crosscheck for the coefficient integrals.

#include <functional>
#include <vector>

#include "oscspin/operators.hpp"
#include "oscspin/spin_bath.hpp"

namespace oscspin {

using RhsFn = std::function<ComplexMatrix(const ComplexMatrix&)>;

// d^2 x d^2 matrix acting on column-stacked density matrices.
struct LiouvillianMatrix {
  std::size_t state_dim = 0;
  ComplexMatrix matrix;  // dim = state_dim^2

  // Column-stacking: vec(rho)[c*d + r] = rho(r, c).
  static std::vector<cplx> stack(const ComplexMatrix& rho);
  static ComplexMatrix unstack(const std::vector<cplx>& v, std::size_t d);

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  std::vector<cplx> eigenvalues() const;
};

// Builds the Liouvillian by applying rhs to every matrix unit; verifies
// linearity on random states first (throws DomainError on failure).
// Refuses dims above 64 (d^2 x d^2 memory bound).
LiouvillianMatrix liouvillian_from_rhs(const RhsFn& rhs, std::size_t dim);

struct ExactJointSpec {
  OscillatorSpec osc;
  DiscreteBath bath;
  std::size_t cutoff;
  double temperature;

  ExactJointSpec(OscillatorSpec o, DiscreteBath b, std::size_t c, double t);
  std::size_t total_dim() const;
};

// Full unitary evolution under the microscopic Hamiltonian (oscillator +
// spins + X ⊗ sum g_i sigma_z^i, couplings scaled by g_scale), starting from
// rho_osc0 ⊗ thermal spin product state, traced back to the oscillator.
DensityMatrix exact_joint_evolution(const ExactJointSpec& spec,
                                    double g_scale,
                                    const DensityMatrix& rho_osc0, double t);

// Same evolution sampled at several times; returns reduced oscillator
// states (one per entry of `times`). Reuses the single-step propagator.
std::vector<DensityMatrix> exact_joint_trajectory(
    const ExactJointSpec& spec, double g_scale, const DensityMatrix& rho_osc0,
    const std::vector<double>& times);

// Total energy <H> of the joint state evolved to time t (conservation
// check helper).
double exact_joint_energy(const ExactJointSpec& spec, double g_scale,
                          const DensityMatrix& rho_osc0, double t);

struct CrosscheckReport {
  // gamma and d1 via: regulated time integrals, frequency-domain identity,
  // ohmic closed form.
  double gamma_tau, gamma_freq, gamma_closed;
  double d1_tau, d1_freq, d1_closed;
  double max_pairwise_gamma;  // max relative deviation among the 3 routes
  double max_pairwise_d1;
  bool pass;
};

// Three-way comparison of gamma and D1; throws nothing, reports deviations;
// pass = all pairwise deviations below tol.
CrosscheckReport quadrature_crosscheck(const OhmicDensity& density,
                                       double temperature,
                                       const OscillatorSpec& osc,
                                       const QuadratureSpec& spec,
                                       double tol = 1e-2);

}  // namespace oscspin
