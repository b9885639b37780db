#pragma once

// Finite-dimensional operator algebra: truncated Fock space, two-level
// operators, tensor products, dissipators and thermal states.
//
// Conventions (natural units hbar = k_B = 1):
//  - all 2x2 operators are stored in the sigma_z (computational) basis;
//  - the sigma_x eigenbasis is fixed as |+> = (|0>+|1>)/sqrt2,
//    |-> = (|0>-|1>)/sqrt2, so sigma_+ = |+><-| is an explicit matrix;
//  - composite spaces are ordered (oscillator ⊗ TLS) throughout.

#include <cstddef>
#include <vector>

#include "oscspin/complex_matrix.hpp"

namespace oscspin {

struct FockSpace {
  std::size_t cutoff;  // basis |0> ... |cutoff-1>
  explicit FockSpace(std::size_t c) : cutoff(c) {
    if (c < 2) throw DomainError("FockSpace: cutoff must be >= 2");
  }
};

// Ordered list of tensor factor dimensions.
struct CompositeSpace {
  std::vector<std::size_t> factors;

  CompositeSpace() = default;
  CompositeSpace(std::initializer_list<std::size_t> f) : factors(f) {}
  explicit CompositeSpace(std::vector<std::size_t> f)
      : factors(std::move(f)) {}

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (std::size_t f : factors) d *= f;
    return d;
  }
  bool operator==(const CompositeSpace& o) const {
    return factors == o.factors;
  }
};

// Dense Hermitian unit-trace state over a composite space.
struct DensityMatrix {
  CompositeSpace space;
  ComplexMatrix matrix;

  DensityMatrix() = default;
  DensityMatrix(CompositeSpace s, ComplexMatrix m);

  std::size_t dim() const { return matrix.dim(); }

  // Hermiticity / unit-trace checks; throws DomainError on violation.
  void validate(double herm_tol = 1e-12, double trace_tol = 1e-10) const;
  // Smallest eigenvalue (positivity monitor; not enforced).
  double min_eigenvalue() const;
};

enum class PauliAxis { x, y, z };

ComplexMatrix annihilation(const FockSpace& space);
ComplexMatrix number_operator(const FockSpace& space);
// x = a + a^dagger, p = -i (a - a^dagger); [x, p] = 2i on the untruncated
// block.
ComplexMatrix dimensionless_position(const FockSpace& space);
ComplexMatrix dimensionless_momentum(const FockSpace& space);

ComplexMatrix pauli(PauliAxis axis);
ComplexMatrix sigma_raise();  // |+><-| in the fixed sigma_x eigenbasis
ComplexMatrix sigma_lower();  // |-><+|
ComplexMatrix plus_projector();
ComplexMatrix minus_projector();

// sigma_z rewritten in the theta-parametrized energy eigenbasis
// {|+>, |->} of a biased TLS: [[cos t, -sin t], [-sin t, -cos t]].
ComplexMatrix sigma_z_in_energy_basis(double theta);

// Kronecker product, dimension dim(a)*dim(b); factor order (left ⊗ right).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// D[A]rho = A rho A^dagger - (A^dagger A rho + rho A^dagger A)/2
ComplexMatrix dissipator(const ComplexMatrix& a, const ComplexMatrix& rho);

// Thermal TLS state p+|+><+| + p-|-><-| with p+/p- = exp(-delta/temperature).
DensityMatrix thermal_tls_state(double delta, double temperature);

// Reduced state on factor `keep` of rho's composite space.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);

// tr(op * rho)
cplx expectation(const ComplexMatrix& op, const DensityMatrix& rho);
cplx expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

// Vacuum |0><0| on a truncated Fock space.
DensityMatrix fock_vacuum(const FockSpace& space);
// |n><n|
DensityMatrix fock_state(const FockSpace& space, std::size_t n);
// Product state rho_a ⊗ rho_b with concatenated factor lists.
DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace oscspin
