#pragma once

#include <string>
#include <vector>

#include "din/audio/waveform.hpp"

namespace din::audio {

struct BandLevel {
  double center_hz = 0.0;  // exact base-ten center 1000 * 10^(m/10)
  double nominal_hz = 0.0; // nominal label (50, 63, 80, ...)
  double power = 0.0;      // band mean-square, linear
  double level_db = 0.0;   // 10*log10(power), floored at kFloorDb
};

struct ThirdOctaveResult {
  std::vector<BandLevel> bands;
  double total_power = 0.0; // full-spectrum mean-square, same normalization
};

inline constexpr double kFloorDb = -120.0;

// Hann-windowed FFT power summed into IEC base-ten third-octave bands from
// 50 Hz up to min(16 kHz, 0.9 * Nyquist). Levels are digital (dB re unit
// mean square); no absolute SPL.
ThirdOctaveResult third_octave_levels(const Waveform& w);

} // namespace din::audio
