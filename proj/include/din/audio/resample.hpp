#pragma once

#include "din/audio/waveform.hpp"

namespace din::audio {

// Rational 2/5 resampling (40 kHz -> 16 kHz) with a Kaiser-windowed sinc
// anti-aliasing filter applied at the 80 kHz intermediate rate. Passband
// flat to well under +/-0.1 dB below 6.4 kHz, stopband under -60 dB above
// 8 kHz. Output length is exactly ceil(2n/5); group delay is compensated
// so output sample m sits at input time 5m/2.
Waveform resample_40k_to_16k(const Waveform& w);

} // namespace din::audio
