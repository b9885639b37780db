#pragma once

// Low-level complex arithmetic kernels used by the matrix layer.
//
// Every operation has a scalar reference implementation and, on x86-64
// hardware with AVX2+FMA, a vectorized variant. The backend is selected at
// runtime (cpuid) and can be forced with force_backend() or the
// OSCSPIN_KERNELS environment variable; the test suite checks that all
// backends produce matching results.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace oscspin::kernels {

using cplx = std::complex<double>;

struct Ops {
  const char* name;

  // y[i] += a * x[i]
  void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // x[i] *= a
  void (*scale)(std::size_t n, cplx a, cplx* x);
  // C = A * B, square row-major dim n; C must not alias A or B.
  void (*matmul)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
  // C += alpha * A * B, same layout/aliasing rules.
  void (*matmul_acc)(std::size_t n, cplx alpha, const cplx* a, const cplx* b,
                     cplx* c);
  // sum_i conj(x[i]) * y[i]
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
};

const Ops& scalar_ops();
#if defined(OSCSPIN_HAVE_AVX2)
const Ops& avx2_ops();
#endif

// Currently active backend (auto-detected on first use).
const Ops& active();

// Force a backend by name: "scalar", "avx2" or "auto". Throws
// std::invalid_argument for unknown or unavailable names.
void force_backend(const std::string& name);

std::vector<std::string> available_backends();

}  // namespace oscspin::kernels
