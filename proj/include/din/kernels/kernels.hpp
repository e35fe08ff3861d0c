#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops shared by the audio pipeline: gain staging,
// mixing, RMS/energy accumulation and FIR/tone-correlation dot products.
// Each operation has a scalar reference implementation and an AVX2 variant;
// the active variant is selected once at startup from CPUID and can be
// overridden (DIN_KERNELS=scalar|avx2 or force_backend) for testing.
// Accumulations are carried in double regardless of backend.
namespace din::kernels {

enum class Backend { kAuto, kScalar, kAvx2 };

// dst[i] = src[i] * gain
void scale(float* dst, const float* src, std::size_t n, float gain);
// dst[i] = a[i] * ga + b[i] * gb
void mix(float* dst, const float* a, float ga, const float* b, float gb, std::size_t n);
// dst[i] = a[i] * b[i]
void multiply(float* dst, const float* a, const float* b, std::size_t n);
// sum of x[i]^2, double accumulator
double sum_squares(const float* x, std::size_t n);
// sum of a[i]*b[i], double accumulator
double dot(const float* a, const float* b, std::size_t n);
// max |x[i]|, 0 for empty input
float peak_abs(const float* x, std::size_t n);

// Name of the variant currently dispatched ("scalar" or "avx2").
std::string active_backend();
// Pin the dispatch (tests); kAuto restores CPUID selection.
void force_backend(Backend b);
// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();

// Direct entry points so equivalence tests can compare variants explicitly.
namespace scalar {
void scale(float* dst, const float* src, std::size_t n, float gain);
void mix(float* dst, const float* a, float ga, const float* b, float gb, std::size_t n);
void multiply(float* dst, const float* a, const float* b, std::size_t n);
double sum_squares(const float* x, std::size_t n);
double dot(const float* a, const float* b, std::size_t n);
float peak_abs(const float* x, std::size_t n);
} // namespace scalar

#if defined(DIN_HAVE_AVX2)
namespace avx2 {
void scale(float* dst, const float* src, std::size_t n, float gain);
void mix(float* dst, const float* a, float ga, const float* b, float gb, std::size_t n);
void multiply(float* dst, const float* a, const float* b, std::size_t n);
double sum_squares(const float* x, std::size_t n);
double dot(const float* a, const float* b, std::size_t n);
float peak_abs(const float* x, std::size_t n);
} // namespace avx2
#endif

} // namespace din::kernels
