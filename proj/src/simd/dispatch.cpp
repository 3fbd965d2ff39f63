#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "afx/simd.hpp"

namespace afx::simd {
namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("AFX_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && avx2_available()) return Backend::Avx2;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

std::string_view name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(AFX_HAVE_AVX2_KERNELS) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) throw std::runtime_error("AVX2 not supported on this CPU");
  current().store(b, std::memory_order_relaxed);
}

const Kernels& kernels(Backend b) {
  return b == Backend::Avx2 && avx2_available() ? detail::avx2_kernels : detail::scalar_kernels;
}

const Kernels& kernels() { return kernels(active_backend()); }

}  // namespace afx::simd
