#pragma once

// Dense square complex matrices (row-major) plus a banded view used by the
// structured generator fast paths. All arithmetic is routed through the
// kernels backend.

#include <complex>
#include <cstddef>
#include <vector>

#include "oscspin/errors.hpp"
#include "oscspin/kernels.hpp"

namespace oscspin {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim)
      : dim_(dim), data_(dim * dim, cplx(0.0, 0.0)) {
    if (dim == 0) throw DimensionError("ComplexMatrix: dim must be >= 1");
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx a);

  // y += a * rhs, fused (avoids a temporary).
  ComplexMatrix& add_scaled(cplx a, const ComplexMatrix& rhs);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // A <- (A + A^dagger)/2
  void hermitize();
  bool is_hermitian(double atol) const;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx a, const ComplexMatrix& m);
ComplexMatrix operator*(double a, const ComplexMatrix& m);

// c += alpha * a * b
void matmul_acc(cplx alpha, const ComplexMatrix& a, const ComplexMatrix& b,
                ComplexMatrix& c);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise |a - b|; equality checks always go through an explicit
// caller-supplied tolerance.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double atol);

// tr(a * b) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Band-limited operator: entries B(i, i+off) for off in [-lower, upper].
// Storage is row-major over offsets so the apply loops stream contiguously.
class BandedOperator {
 public:
  BandedOperator() = default;
  BandedOperator(std::size_t dim, int lower, int upper);

  // Compresses a dense matrix; throws DomainError if entries outside the
  // detected band exceed atol.
  static BandedOperator from_dense(const ComplexMatrix& m, double atol = 0.0);

  std::size_t dim() const { return dim_; }
  int lower() const { return lower_; }
  int upper() const { return upper_; }

  cplx& at(std::size_t i, int off) { return band_[i * width() + off + lower_]; }
  const cplx& at(std::size_t i, int off) const {
    return band_[i * width() + off + lower_];
  }

  ComplexMatrix to_dense() const;

  // y += alpha * B * x   (x, y dense square dim() matrices)
  void apply_left(cplx alpha, const ComplexMatrix& x, ComplexMatrix& y) const;
  // y += alpha * x * B
  void apply_right(cplx alpha, const ComplexMatrix& x, ComplexMatrix& y) const;

 private:
  std::size_t width() const {
    return static_cast<std::size_t>(lower_ + upper_ + 1);
  }
  std::size_t dim_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<cplx> band_;
};

}  // namespace oscspin
