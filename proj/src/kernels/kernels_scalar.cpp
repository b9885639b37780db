#include "oscspin/kernels.hpp"

namespace oscspin::kernels {

namespace {

void axpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

void scale_scalar(std::size_t n, cplx a, cplx* x) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

// Row-major i-k-j product: the inner loop is an axpy over the rows of B,
// which keeps both B and C accesses contiguous.
void matmul_acc_scalar(std::size_t n, cplx alpha, const cplx* a, const cplx* b,
                       cplx* c) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* arow = a + i * n;
    cplx* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = alpha * arow[k];
      if (aik == cplx(0.0, 0.0)) continue;
      axpy_scalar(n, aik, b + k * n, crow);
    }
  }
}

void matmul_scalar(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx(0.0, 0.0);
  matmul_acc_scalar(n, cplx(1.0, 0.0), a, b, c);
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", axpy_scalar, scale_scalar, matmul_scalar,
                       matmul_acc_scalar, dotc_scalar};
  return ops;
}

}  // namespace oscspin::kernels
