#include "din/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#if defined(DIN_HAVE_AVX2)
#include <cpuid.h>
#endif

namespace din::kernels {

namespace {

bool cpu_supports_avx2() {
#if defined(DIN_HAVE_AVX2)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  const bool osxsave = (ecx & (1u << 27)) != 0;
  const bool avx = (ecx & (1u << 28)) != 0;
  const bool fma = (ecx & (1u << 12)) != 0;
  if (!osxsave || !avx || !fma) return false;
  // OS must preserve YMM state (xgetbv without -mxsave).
  unsigned xcr0_lo = 0, xcr0_hi = 0;
  __asm__ volatile("xgetbv" : "=a"(xcr0_lo), "=d"(xcr0_hi) : "c"(0));
  if ((xcr0_lo & 0x6) != 0x6) return false;
  if (__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx) == 0) return false;
  return (ebx & (1u << 5)) != 0; // AVX2
#else
  return false;
#endif
}

Backend resolve_auto() {
  if (const char* env = std::getenv("DIN_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_supports_avx2()) return Backend::kAvx2;
  }
  return cpu_supports_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend> g_backend{resolve_auto()};

Backend active() { return g_backend.load(std::memory_order_relaxed); }

} // namespace

bool avx2_available() { return cpu_supports_avx2(); }

void force_backend(Backend b) {
  if (b == Backend::kAuto) b = resolve_auto();
  if (b == Backend::kAvx2 && !cpu_supports_avx2()) b = Backend::kScalar;
  g_backend.store(b, std::memory_order_relaxed);
}

std::string active_backend() {
  return active() == Backend::kAvx2 ? "avx2" : "scalar";
}

#if defined(DIN_HAVE_AVX2)
#define DIN_DISPATCH(fn, ...)                                   \
  do {                                                          \
    if (active() == Backend::kAvx2) return avx2::fn(__VA_ARGS__); \
    return scalar::fn(__VA_ARGS__);                             \
  } while (0)
#else
#define DIN_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void scale(float* dst, const float* src, std::size_t n, float gain) {
  DIN_DISPATCH(scale, dst, src, n, gain);
}
void mix(float* dst, const float* a, float ga, const float* b, float gb, std::size_t n) {
  DIN_DISPATCH(mix, dst, a, ga, b, gb, n);
}
void multiply(float* dst, const float* a, const float* b, std::size_t n) {
  DIN_DISPATCH(multiply, dst, a, b, n);
}
double sum_squares(const float* x, std::size_t n) { DIN_DISPATCH(sum_squares, x, n); }
double dot(const float* a, const float* b, std::size_t n) { DIN_DISPATCH(dot, a, b, n); }
float peak_abs(const float* x, std::size_t n) { DIN_DISPATCH(peak_abs, x, n); }

#undef DIN_DISPATCH

} // namespace din::kernels
