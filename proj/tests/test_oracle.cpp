#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oscspin/dynamics.hpp"
#include "oscspin/linalg.hpp"
#include "oscspin/oracle.hpp"

using namespace oscspin;

namespace {

ComplexMatrix random_state(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = cplx(dist(rng), dist(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real(), 0.0);
  return rho;
}

bool spectrum_contains(const std::vector<cplx>& ev, cplx target,
                       double tol) {
  return std::any_of(ev.begin(), ev.end(), [&](const cplx& v) {
    return std::abs(v - target) < tol;
  });
}

}  // namespace

TEST_CASE("liouvillian spectrum of a diagonal commutator") {
  ComplexMatrix h(2);
  h(1, 1) = 1.0;
  const RhsFn rhs = [&h](const ComplexMatrix& rho) {
    return cplx(0.0, -1.0) * commutator(h, rho);
  };
  const auto liou = liouvillian_from_rhs(rhs, 2);
  const auto ev = liou.eigenvalues();
  CHECK(ev.size() == 4);
  CHECK(spectrum_contains(ev, cplx(0.0, 0.0), 1e-12));
  CHECK(spectrum_contains(ev, cplx(0.0, 1.0), 1e-12));
  CHECK(spectrum_contains(ev, cplx(0.0, -1.0), 1e-12));
}

TEST_CASE("liouvillian spectrum of a two-level decay") {
  const double gamma = 0.8;
  const ComplexMatrix sm = sigma_lower();
  const RhsFn rhs = [&](const ComplexMatrix& rho) {
    ComplexMatrix out = dissipator(sm, rho);
    out *= cplx(gamma, 0.0);
    return out;
  };
  const auto ev = liouvillian_from_rhs(rhs, 2).eigenvalues();
  CHECK(spectrum_contains(ev, cplx(0.0, 0.0), 1e-12));
  CHECK(spectrum_contains(ev, cplx(-gamma, 0.0), 1e-12));
  int halves = 0;
  for (const auto& v : ev)
    if (std::abs(v - cplx(-gamma / 2.0, 0.0)) < 1e-12) ++halves;
  CHECK(halves == 2);
}

TEST_CASE("liouvillian application equals the direct rhs") {
  const TlsJointSpec spec = TlsJointSpec::from_nbar(1.0, 1.0, 0.8, 5.0, 0.5);
  const JointGenerator gen(spec, FockSpace(6));
  const auto liou = liouvillian_from_rhs(
      [&gen](const ComplexMatrix& m) { return gen.rhs(m); },
      gen.space().total_dim());
  double worst = 0.0;
  for (unsigned seed = 0; seed < 4; ++seed) {
    const ComplexMatrix rho = random_state(12, seed);
    worst = std::max(worst, max_abs_diff(liou.apply(rho), gen.rhs(rho)));
  }
  CHECK(worst < 1e-12);

  // stacked identity maps to a traceless image for Lindblad generators
  const ComplexMatrix mixed =
      cplx(1.0 / 12.0, 0.0) * ComplexMatrix::identity(12);
  CHECK(std::abs(liou.apply(mixed).trace()) < 1e-12);
}

TEST_CASE("joint generator is dissipative (spectrum in the left half-plane)") {
  const TlsJointSpec spec = TlsJointSpec::from_nbar(1.0, 1.0, 1.0, 4.0, 0.5);
  const JointGenerator gen(spec, FockSpace(5));
  const auto ev = liouvillian_from_rhs(
                      [&gen](const ComplexMatrix& m) { return gen.rhs(m); },
                      gen.space().total_dim())
                      .eigenvalues();
  double max_real = -1e300;
  for (const auto& v : ev) max_real = std::max(max_real, v.real());
  CHECK(max_real < 1e-10);
}

TEST_CASE("nonlinear maps and oversized dims are rejected") {
  const RhsFn bad = [](const ComplexMatrix& rho) {
    ComplexMatrix out = rho;
    out(0, 0) += rho(0, 0) * rho(0, 0);
    return out;
  };
  CHECK_THROWS_AS(liouvillian_from_rhs(bad, 3), DomainError);

  const RhsFn ok = [](const ComplexMatrix& rho) { return rho; };
  CHECK_THROWS_AS(liouvillian_from_rhs(ok, 65), DomainError);
}

TEST_CASE("exact joint evolution: trivial limits") {
  const DiscreteBath bath({SpinParams(0.0, 1.1, 1.0),
                           SpinParams(0.0, 0.7, 0.8)});
  const ExactJointSpec spec(OscillatorSpec(1.0, 1.0), bath, 8, 0.5);
  const DensityMatrix rho0 = [&] {
    ComplexMatrix m(8);
    m(0, 0) = 0.5;
    m(0, 1) = 0.5;
    m(1, 0) = 0.5;
    m(1, 1) = 0.5;
    return DensityMatrix(CompositeSpace{8}, std::move(m));
  }();

  // t = 0 returns the initial oscillator state
  const DensityMatrix same = exact_joint_evolution(spec, 1.0, rho0, 0.0);
  CHECK(max_abs_diff(same.matrix, rho0.matrix) < 1e-12);

  // g = 0: reduced state equals free evolution under the truncated H_S
  const double t = 1.3;
  const DensityMatrix free_red = exact_joint_evolution(spec, 0.0, rho0, t);
  const FockSpace osc_space(8);
  const ComplexMatrix x = std::sqrt(0.5) * dimensionless_position(osc_space);
  const ComplexMatrix p = std::sqrt(0.5) * dimensionless_momentum(osc_space);
  ComplexMatrix h_s = 0.5 * (p * p);
  h_s.add_scaled(0.5, x * x);
  const ComplexMatrix u = linalg::expm(cplx(0.0, -t) * h_s);
  const ComplexMatrix expected = (u * rho0.matrix) * u.adjoint();
  CHECK(max_abs_diff(free_red.matrix, expected) < 1e-10);
}

TEST_CASE("exact joint evolution conserves energy") {
  const DiscreteBath bath({SpinParams(0.3, 1.0, 0.6),
                           SpinParams(-0.2, 0.8, 0.5)});
  const ExactJointSpec spec(OscillatorSpec(1.0, 1.0), bath, 6, 1.0);
  const DensityMatrix rho0 = fock_state(FockSpace(6), 1);
  const double e0 = exact_joint_energy(spec, 0.7, rho0, 0.0);
  const double e1 = exact_joint_energy(spec, 0.7, rho0, 2.5);
  CHECK(std::abs(e1 - e0) < 1e-9);
}

TEST_CASE("zero-mean force leaves <x> stationary at early times") {
  const DensityMatrix rho0 = fock_vacuum(FockSpace(8));
  const ComplexMatrix x = dimensionless_position(FockSpace(8));
  const std::vector<double> times{0.05, 0.1};

  // pure tunneling spins: <sigma_z> = 0, so the mean force vanishes
  const DiscreteBath balanced({SpinParams(0.0, 1.0, 0.9),
                               SpinParams(0.0, 1.4, 0.7)});
  const ExactJointSpec spec_ok(OscillatorSpec(1.0, 1.0), balanced, 8, 0.8);
  for (const auto& red :
       exact_joint_trajectory(spec_ok, 1.0, rho0, times))
    CHECK(std::abs(expectation(x, red)) < 1e-8);

  // a biased bath pushes the oscillator measurably
  const DiscreteBath biased({SpinParams(2.0, 0.3, 1.0)});
  const ExactJointSpec spec_biased(OscillatorSpec(1.0, 1.0), biased, 8, 0.1);
  const auto red =
      exact_joint_trajectory(spec_biased, 1.0, rho0, {0.5}).front();
  CHECK(std::abs(expectation(x, red)) > 1e-3);
}

TEST_CASE("exact joint spec enforces the desk-scale bound") {
  const DiscreteBath bath({SpinParams(0.0, 1.0, 1.0), SpinParams(0.0, 1.0, 1.0),
                           SpinParams(0.0, 1.0, 1.0),
                           SpinParams(0.0, 1.0, 1.0)});
  CHECK_THROWS_AS(ExactJointSpec(OscillatorSpec(1.0, 1.0), bath, 64, 1.0),
                  DomainError);
}

TEST_CASE("three-way coefficient crosscheck") {
  const OhmicDensity density(1.0, 1.0, 10.0);
  const OscillatorSpec osc(1.0, 1.0);
  QuadratureSpec spec;
  const auto rep = quadrature_crosscheck(density, 1.0, osc, spec, 1e-2);
  CHECK(rep.pass);
  CHECK(rep.max_pairwise_gamma < 1e-3);
  CHECK(rep.max_pairwise_d1 < 1e-3);

  // T = 0: all routes give gamma = L^2/(L^2+1)
  const auto rep0 = quadrature_crosscheck(density, 0.0, osc, spec, 1e-2);
  CHECK(rep0.gamma_closed == doctest::Approx(100.0 / 101.0).epsilon(1e-14));
  CHECK(rep0.gamma_tau == doctest::Approx(100.0 / 101.0).epsilon(1e-3));
  CHECK(rep0.gamma_freq == doctest::Approx(100.0 / 101.0).epsilon(1e-6));

  // an unreachable tolerance reports failure instead of crashing
  const auto strict = quadrature_crosscheck(density, 1.0, osc, spec, 1e-15);
  CHECK(!strict.pass);
  CHECK(strict.max_pairwise_gamma > 1e-15);
}
