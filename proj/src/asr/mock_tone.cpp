#include <array>
#include <cmath>
#include <vector>

#include "din/asr/backend.hpp"
#include "din/audio/synth.hpp"
#include "din/kernels/kernels.hpp"

namespace din::asr {

namespace {

constexpr double kWindowS = 0.24; // fits inside a 0.3 s signature
constexpr double kHopS = 0.06;    // guarantees one fully-inside window
constexpr double kRatioOverFloor = 12.0;
constexpr double kMinToneAmplitude = 0.003; // full-scale, absolute gate
constexpr int kMergeFrames = 3;             // <= 180 ms counts as the same utterance

struct ToneTables {
  // cos/sin correlation tables for all 20 candidate tones, Hann included.
  std::array<std::vector<float>, 20> cos_t;
  std::array<std::vector<float>, 20> sin_t;
  std::vector<float> window;
  std::size_t win_len;

  explicit ToneTables(int rate)
      : win_len(static_cast<std::size_t>(std::llround(kWindowS * rate))) {
    window.resize(win_len);
    for (std::size_t i = 0; i < win_len; ++i)
      window[i] = static_cast<float>(
          0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                               static_cast<double>(win_len - 1)));
    for (int d = 0; d < 10; ++d) {
      const auto [fa, fb] = audio::signature_freqs(d);
      fill(2 * d, fa, rate);
      fill(2 * d + 1, fb, rate);
    }
  }

  void fill(int slot, double freq, int rate) {
    auto& c = cos_t[static_cast<std::size_t>(slot)];
    auto& s = sin_t[static_cast<std::size_t>(slot)];
    c.resize(win_len);
    s.resize(win_len);
    const double w = 2.0 * M_PI * freq / rate;
    for (std::size_t i = 0; i < win_len; ++i) {
      c[i] = static_cast<float>(std::cos(w * static_cast<double>(i)));
      s[i] = static_cast<float>(std::sin(w * static_cast<double>(i)));
    }
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

Transcript mock_tone_decode(const audio::Waveform& audio) {
  Transcript out;
  out.source = TranscriptSource::kMock;
  if (audio.samples.empty()) return out;

  const int rate = audio.sample_rate;
  const ToneTables tables(rate);
  const std::size_t win = tables.win_len;
  const auto hop = static_cast<std::size_t>(std::llround(kHopS * rate));

  std::vector<float> padded = audio.samples;
  if (padded.size() < win) padded.resize(win, 0.0f);

  // Amplitude gate expressed as correlator power: a tone of amplitude a
  // correlates to roughly (a * sum(window) / 2)^2.
  double window_sum = 0.0;
  for (float v : tables.window) window_sum += v;
  const double abs_gate =
      std::pow(kMinToneAmplitude * window_sum / 2.0, 2.0);

  std::vector<float> xw(win);
  int last_digit = -1;
  long long last_frame = -1000;
  long long frame_idx = 0;
  for (std::size_t start = 0; start + win <= padded.size();
       start += hop, ++frame_idx) {
    kernels::multiply(xw.data(), padded.data() + start, tables.window.data(), win);

    std::array<double, 20> tone_power{};
    for (int k = 0; k < 20; ++k) {
      const double c = kernels::dot(xw.data(), tables.cos_t[static_cast<std::size_t>(k)].data(), win);
      const double s = kernels::dot(xw.data(), tables.sin_t[static_cast<std::size_t>(k)].data(), win);
      tone_power[static_cast<std::size_t>(k)] = c * c + s * s;
    }
    const double floor = median({tone_power.begin(), tone_power.end()});

    int best = -1;
    double best_power = 0.0;
    for (int d = 0; d < 10; ++d) {
      // Both tones of the signature must be present.
      const double p = std::min(tone_power[static_cast<std::size_t>(2 * d)],
                                tone_power[static_cast<std::size_t>(2 * d + 1)]);
      if (p > best_power) {
        best_power = p;
        best = d;
      }
    }
    if (best < 0 || best_power <= kRatioOverFloor * floor + abs_gate) continue;

    if (best == last_digit && frame_idx - last_frame <= kMergeFrames) {
      last_frame = frame_idx;
      continue;
    }
    out.tokens.push_back(DigitLexicon::canonical_word(best));
    last_digit = best;
    last_frame = frame_idx;
  }
  return out;
}

} // namespace din::asr
