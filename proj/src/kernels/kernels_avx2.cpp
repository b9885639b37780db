#include "oscspin/kernels.hpp"

#if defined(OSCSPIN_HAVE_AVX2)

#include <immintrin.h>

namespace oscspin::kernels {

namespace {

// One __m256d holds two complex doubles as [re0, im0, re1, im1].
// For y += a*x the product is assembled from an even/odd lane add-sub:
//   re = ar*xr - ai*xi,  im = ar*xi + ai*xr.

inline __m256d cmul2(__m256d x, __m256d ar, __m256d ai) {
  __m256d p1 = _mm256_mul_pd(ar, x);
  __m256d xs = _mm256_permute_pd(x, 0x5);  // swap re/im in each pair
  __m256d p2 = _mm256_mul_pd(ai, xs);
  return _mm256_addsub_pd(p1, p2);
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    yv = _mm256_add_pd(yv, cmul2(xv, ar, ai));
    _mm256_storeu_pd(yd + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
  }
}

void scale_avx2(std::size_t n, cplx a, cplx* x) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* xd = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul2(xv, ar, ai));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cplx(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
  }
}

void matmul_acc_avx2(std::size_t n, cplx alpha, const cplx* a, const cplx* b,
                     cplx* c) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* arow = a + i * n;
    cplx* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = alpha * arow[k];
      if (aik == cplx(0.0, 0.0)) continue;
      axpy_avx2(n, aik, b + k * n, crow);
    }
  }
}

void matmul_avx2(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx(0.0, 0.0);
  matmul_acc_avx2(n, cplx(1.0, 0.0), a, b, c);
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr.
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    __m256d ys = _mm256_permute_pd(yv, 0x5);
    acc_im = _mm256_fmadd_pd(xv, ys, acc_im);
  }
  // acc_re lanes: [xr*yr, xi*yi, ...] -> plain sum.
  // acc_im lanes: [xr*yi, xi*yr, ...] -> even minus odd.
  alignas(32) double re4[4], im4[4];
  _mm256_store_pd(re4, acc_re);
  _mm256_store_pd(im4, acc_im);
  double re = re4[0] + re4[1] + re4[2] + re4[3];
  double im = im4[0] - im4[1] + im4[2] - im4[3];
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{"avx2", axpy_avx2, scale_avx2, matmul_avx2,
                       matmul_acc_avx2, dotc_avx2};
  return ops;
}

}  // namespace oscspin::kernels

#endif  // OSCSPIN_HAVE_AVX2
