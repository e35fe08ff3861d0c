#pragma once

#include <string>

#include "din/audio/waveform.hpp"

namespace din::audio {

// 16-bit PCM mono little-endian RIFF WAV. Anything else is rejected:
// MalformedWav for structural damage, UnsupportedFormat for valid files
// outside that profile (other bit depths, multi-channel, compressed).
Waveform wav_read(const std::string& path);
void wav_write(const std::string& path, const Waveform& w);

} // namespace din::audio
