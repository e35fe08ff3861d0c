#include "din/audio/third_octave.hpp"

#include <cmath>

#include "din/audio/fft.hpp"
#include "din/kernels/kernels.hpp"

namespace din::audio {

namespace {

// R10 preferred numbers for nominal band labels.
constexpr double kSeries[10] = {1.0, 1.25, 1.6, 2.0, 2.5, 3.15, 4.0, 5.0, 6.3, 8.0};

double nominal_for(int m) {
  int q = m / 10;
  int r = m % 10;
  if (r < 0) {
    r += 10;
    q -= 1;
  }
  return 1000.0 * std::pow(10.0, q) * kSeries[r];
}

} // namespace

ThirdOctaveResult third_octave_levels(const Waveform& w) {
  if (w.duration_s() < 0.5)
    throw TooShort("third-octave analysis needs >= 0.5 s of audio");

  const std::size_t n = w.samples.size();
  std::vector<float> windowed(n);
  std::vector<float> window(n);
  for (std::size_t i = 0; i < n; ++i)
    window[i] = static_cast<float>(
        0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n - 1)));
  kernels::multiply(windowed.data(), w.samples.data(), window.data(), n);
  const double window_energy = kernels::sum_squares(window.data(), n);

  const PowerSpectrum ps = power_spectrum(windowed);
  const auto nfft = static_cast<double>(ps.nfft);
  // E[ sum (w*x)^2 ] = MS(x) * sum(w^2); Parseval links that to bin powers.
  const double norm = 1.0 / (nfft * window_energy);
  const double bin_hz = static_cast<double>(w.sample_rate) / nfft;

  auto bin_ms = [&](std::size_t k) {
    const double two_sided = (k == 0 || k == ps.bin_power.size() - 1) ? 1.0 : 2.0;
    return two_sided * ps.bin_power[k] * norm;
  };

  ThirdOctaveResult out;
  for (std::size_t k = 0; k < ps.bin_power.size(); ++k) out.total_power += bin_ms(k);

  const double top = std::min(16000.0, 0.45 * w.sample_rate); // 0.9 * Nyquist
  const double edge = std::pow(10.0, 0.05); // 10^(1/20) = G^(1/6), G = 10^0.3
  for (int m = -13;; ++m) {
    const double center = 1000.0 * std::pow(10.0, 0.1 * m);
    if (center > top) break;
    BandLevel band;
    band.center_hz = center;
    band.nominal_hz = nominal_for(m);
    const double lo = center / edge;
    const double hi = center * edge;
    const auto k_lo = static_cast<std::size_t>(std::ceil(lo / bin_hz));
    for (std::size_t k = k_lo; k < ps.bin_power.size(); ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      if (f >= hi) break;
      band.power += bin_ms(k);
    }
    band.level_db = band.power > 0.0
                        ? std::max(10.0 * std::log10(band.power), kFloorDb)
                        : kFloorDb;
    out.bands.push_back(band);
  }
  return out;
}

} // namespace din::audio
