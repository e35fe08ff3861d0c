#include "din/kernels/kernels.hpp"

#include <cmath>

namespace din::kernels::scalar {

void scale(float* dst, const float* src, std::size_t n, float gain) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * gain;
}

void mix(float* dst, const float* a, float ga, const float* b, float gb, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * ga + b[i] * gb;
}

void multiply(float* dst, const float* a, const float* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

double sum_squares(const float* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = static_cast<double>(x[i]);
    acc += v * v;
  }
  return acc;
}

double dot(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

float peak_abs(const float* x, std::size_t n) {
  float peak = 0.0f;
  for (std::size_t i = 0; i < n; ++i) {
    const float v = std::fabs(x[i]);
    if (v > peak) peak = v;
  }
  return peak;
}

} // namespace din::kernels::scalar
