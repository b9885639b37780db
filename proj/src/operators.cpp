#include "oscspin/operators.hpp"

#include <cmath>

#include "oscspin/linalg.hpp"

namespace oscspin {

DensityMatrix::DensityMatrix(CompositeSpace s, ComplexMatrix m)
    : space(std::move(s)), matrix(std::move(m)) {
  if (space.total_dim() != matrix.dim())
    throw DimensionError("DensityMatrix: space/matrix dimension mismatch");
}

void DensityMatrix::validate(double herm_tol, double trace_tol) const {
  if (!matrix.is_hermitian(herm_tol))
    throw DomainError("DensityMatrix: not Hermitian within tolerance");
  if (std::abs(matrix.trace() - cplx(1.0, 0.0)) > trace_tol)
    throw DomainError("DensityMatrix: trace deviates from 1");
}

double DensityMatrix::min_eigenvalue() const {
  return linalg::min_eigenvalue_hermitian(matrix);
}

ComplexMatrix annihilation(const FockSpace& space) {
  ComplexMatrix a(space.cutoff);
  for (std::size_t n = 0; n + 1 < space.cutoff; ++n)
    a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return a;
}

ComplexMatrix number_operator(const FockSpace& space) {
  ComplexMatrix n(space.cutoff);
  for (std::size_t k = 0; k < space.cutoff; ++k)
    n(k, k) = static_cast<double>(k);
  return n;
}

ComplexMatrix dimensionless_position(const FockSpace& space) {
  ComplexMatrix a = annihilation(space);
  ComplexMatrix x = a;
  x += a.adjoint();
  return x;
}

ComplexMatrix dimensionless_momentum(const FockSpace& space) {
  ComplexMatrix a = annihilation(space);
  ComplexMatrix p = a;
  p -= a.adjoint();
  p *= cplx(0.0, -1.0);
  return p;
}

ComplexMatrix pauli(PauliAxis axis) {
  ComplexMatrix m(2);
  switch (axis) {
    case PauliAxis::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::y:
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    case PauliAxis::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

ComplexMatrix sigma_raise() {
  // |+><-| with |+-> = (|0> +- |1>)/sqrt2
  ComplexMatrix m(2);
  m(0, 0) = 0.5;
  m(0, 1) = -0.5;
  m(1, 0) = 0.5;
  m(1, 1) = -0.5;
  return m;
}

ComplexMatrix sigma_lower() { return sigma_raise().adjoint(); }

ComplexMatrix plus_projector() {
  ComplexMatrix m(2);
  m(0, 0) = 0.5;
  m(0, 1) = 0.5;
  m(1, 0) = 0.5;
  m(1, 1) = 0.5;
  return m;
}

ComplexMatrix minus_projector() {
  ComplexMatrix m(2);
  m(0, 0) = 0.5;
  m(0, 1) = -0.5;
  m(1, 0) = -0.5;
  m(1, 1) = 0.5;
  return m;
}

ComplexMatrix sigma_z_in_energy_basis(double theta) {
  ComplexMatrix m(2);
  m(0, 0) = std::cos(theta);
  m(0, 1) = -std::sin(theta);
  m(1, 0) = -std::sin(theta);
  m(1, 1) = -std::cos(theta);
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix dissipator(const ComplexMatrix& a, const ComplexMatrix& rho) {
  if (a.dim() != rho.dim())
    throw DimensionError("dissipator: dimension mismatch");
  const ComplexMatrix adag = a.adjoint();
  ComplexMatrix out = (a * rho) * adag;
  out.add_scaled(-0.5, anticommutator(adag * a, rho));
  return out;
}

DensityMatrix thermal_tls_state(double delta, double temperature) {
  if (delta <= 0.0) throw DomainError("thermal_tls_state: delta must be > 0");
  if (temperature < 0.0)
    throw DomainError("thermal_tls_state: negative temperature");
  // p+/p- = exp(-delta/T); at T = 0 the state is the ground state |->.
  const double p_minus =
      temperature == 0.0 ? 1.0 : 1.0 / (1.0 + std::exp(-delta / temperature));
  const double p_plus = 1.0 - p_minus;
  ComplexMatrix m = plus_projector();
  m *= cplx(p_plus, 0.0);
  m.add_scaled(p_minus, minus_projector());
  return DensityMatrix(CompositeSpace{2}, std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
  const auto& factors = rho.space.factors;
  if (keep >= factors.size())
    throw DimensionError("partial_trace: invalid factor index");
  const std::size_t dk = factors[keep];
  // Split indices into (left, kept, right) strides.
  std::size_t left = 1, right = 1;
  for (std::size_t f = 0; f < keep; ++f) left *= factors[f];
  for (std::size_t f = keep + 1; f < factors.size(); ++f) right *= factors[f];

  ComplexMatrix out(dk);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t r = 0; r < right; ++r)
      for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
          const std::size_t row = (l * dk + i) * right + r;
          const std::size_t col = (l * dk + j) * right + r;
          out(i, j) += rho.matrix(row, col);
        }
  return DensityMatrix(CompositeSpace{dk}, std::move(out));
}

cplx expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
  return expectation(op, rho.matrix);
}

cplx expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (op.dim() != rho.dim())
    throw DimensionError("expectation: dimension mismatch");
  return trace_of_product(op, rho);
}

DensityMatrix fock_vacuum(const FockSpace& space) {
  return fock_state(space, 0);
}

DensityMatrix fock_state(const FockSpace& space, std::size_t n) {
  if (n >= space.cutoff) throw DomainError("fock_state: level above cutoff");
  ComplexMatrix m(space.cutoff);
  m(n, n) = 1.0;
  return DensityMatrix(CompositeSpace{space.cutoff}, std::move(m));
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  CompositeSpace space;
  space.factors = a.space.factors;
  space.factors.insert(space.factors.end(), b.space.factors.begin(),
                       b.space.factors.end());
  return DensityMatrix(std::move(space), tensor(a.matrix, b.matrix));
}

}  // namespace oscspin
