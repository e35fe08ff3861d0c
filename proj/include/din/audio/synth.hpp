#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "din/audio/waveform.hpp"
#include "din/core/types.hpp"
#include "din/rng.hpp"

namespace din::audio {

struct TimingSpec {
  double lead_s = 0.5;
  double lead_jitter_s = 0.05;
  double gap_s = 0.15;
  double gap_jitter_s = 0.05;
  double trail_s = 0.5;
  double trail_jitter_s = 0.05;
};

// Stimulus assets and assembly parameters. Synthetic mode needs no files:
// each digit becomes a unique two-tone signature and the masker is white
// noise, which keeps the whole pipeline testable without recordings.
struct StimulusManifest {
  bool synthetic = true;
  int sample_rate = 16000;
  std::array<std::string, 10> digit_assets{};      // wav paths, real-material mode
  std::array<double, 10> level_corrections_db{};   // per-digit offsets
  std::vector<std::string> noise_tokens;           // wav paths, optional
  TimingSpec timing;

  static StimulusManifest synthetic_default() { return {}; }
  static StimulusManifest load(const std::string& path); // JSON
  void validate() const;
};

struct SynthResult {
  Waveform mix;
  Waveform speech; // scaled speech alone (mix = speech + noise, sample-wise)
  Waveform noise;  // scaled noise alone
  std::vector<std::pair<std::size_t, std::size_t>> digit_spans; // [begin,end)
  double speech_rms = 0.0; // over the speech-active region
  double noise_rms = 0.0;  // over the same region
};

// Two-tone signature parameters shared with the mock decoder.
inline constexpr double kSignatureDuration = 0.3; // seconds
inline constexpr double kSignatureRamp = 0.01;
std::pair<double, double> signature_freqs(int digit);
// Unit-RMS signature at the given rate.
Waveform digit_signature(int digit, int sample_rate);

// Assembles lead + d1 + gap + d2 + gap + d3 + trail with uniform jitter,
// applies per-digit level corrections, and mixes with noise scaled so that
// speech RMS / noise RMS over the speech-active region equals snr_db.
// Draw order: lead, gap1, gap2, trail jitters, then noise token choice or
// noise samples. Identical (triplet, snr, seed) gives bit-identical output.
SynthResult synth_triplet(const DigitTriplet& t, const StimulusManifest& m,
                          double snr_db, Rng& rng);

// Clean signature sequence with nominal gaps, no noise: the simulated
// participant's "spoken" response. target_rms applies to the active region.
Waveform synth_spoken_digits(const std::vector<int>& digits, int sample_rate,
                             double target_rms = 0.25);

} // namespace din::audio
