#pragma once

#include <cstddef>
#include <vector>

#include "din/errors.hpp"

namespace din::audio {

// Mono float audio buffer. Samples live in [-1, 1] after gain staging;
// synthesis enforces that, I/O clamps.
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 16000;

  Waveform() = default;
  Waveform(std::vector<float> s, int rate) : samples(std::move(s)), sample_rate(rate) {
    check_rate(rate);
  }

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }

  static void check_rate(int rate) {
    switch (rate) {
      case 16000:
      case 40000:
      case 44100:
      case 48000:
        return;
      default:
        throw WrongSampleRate("unsupported sample rate " + std::to_string(rate));
    }
  }
};

// RMS over [begin, end) sample indices.
double rms(const Waveform& w, std::size_t begin, std::size_t end);
double rms(const Waveform& w);

} // namespace din::audio
