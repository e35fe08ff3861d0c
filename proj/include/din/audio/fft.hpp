#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace din::audio {

// In-place iterative radix-2 FFT. n must be a power of two.
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

// |X[k]|^2 for k = 0..n/2 of the real input zero-padded to the next power
// of two >= x.size(). Returns the one-sided bin powers and the padded size.
struct PowerSpectrum {
  std::vector<double> bin_power; // k = 0..nfft/2
  std::size_t nfft = 0;
};
PowerSpectrum power_spectrum(const std::vector<float>& x);

std::size_t next_pow2(std::size_t n);

} // namespace din::audio
