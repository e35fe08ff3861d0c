#include "din/audio/fft.hpp"

#include <cmath>

namespace din::audio {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& v : a) v /= static_cast<double>(n);
  }
}

PowerSpectrum power_spectrum(const std::vector<float>& x) {
  const std::size_t nfft = next_pow2(x.size() == 0 ? 1 : x.size());
  std::vector<std::complex<double>> a(nfft, {0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = {static_cast<double>(x[i]), 0.0};
  fft(a);
  PowerSpectrum ps;
  ps.nfft = nfft;
  ps.bin_power.resize(nfft / 2 + 1);
  for (std::size_t k = 0; k <= nfft / 2; ++k) ps.bin_power[k] = std::norm(a[k]);
  return ps;
}

} // namespace din::audio
