#include "oscspin/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace oscspin::kernels {

namespace {

bool avx2_available() {
#if defined(OSCSPIN_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* detect() {
  if (const char* env = std::getenv("OSCSPIN_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_ops();
#if defined(OSCSPIN_HAVE_AVX2)
    if (want == "avx2" && avx2_available()) return &avx2_ops();
#endif
    // Unknown or unavailable request falls through to auto-detect.
  }
#if defined(OSCSPIN_HAVE_AVX2)
  if (avx2_available()) return &avx2_ops();
#endif
  return &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = detect();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

void force_backend(const std::string& name) {
  if (name == "auto") {
    g_active.store(detect(), std::memory_order_release);
    return;
  }
  if (name == "scalar") {
    g_active.store(&scalar_ops(), std::memory_order_release);
    return;
  }
#if defined(OSCSPIN_HAVE_AVX2)
  if (name == "avx2") {
    if (!avx2_available())
      throw std::invalid_argument("kernels: avx2 not supported on this cpu");
    g_active.store(&avx2_ops(), std::memory_order_release);
    return;
  }
#endif
  throw std::invalid_argument("kernels: unknown backend '" + name + "'");
}

std::vector<std::string> available_backends() {
  std::vector<std::string> out{"scalar"};
#if defined(OSCSPIN_HAVE_AVX2)
  if (avx2_available()) out.emplace_back("avx2");
#endif
  return out;
}

}  // namespace oscspin::kernels
