#pragma once

// Dense eigenvalue and exponential routines on top of ComplexMatrix.

#include <vector>

#include "oscspin/complex_matrix.hpp"

namespace oscspin::linalg {

// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
// first; entries are assumed Hermitian within roundoff.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue_hermitian(const ComplexMatrix& m);

// Full spectrum of a general complex matrix (unordered).
std::vector<cplx> complex_eigenvalues(const ComplexMatrix& m);

// Solve A X = B for X (partial-pivot LU).
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

// Matrix exponential by scaling-and-squaring with a fixed-order (13,13)
// Pade approximant.
ComplexMatrix expm(const ComplexMatrix& a);

}  // namespace oscspin::linalg
