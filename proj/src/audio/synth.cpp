#include "din/audio/synth.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "din/audio/wav_io.hpp"
#include "din/kernels/kernels.hpp"

namespace din::audio {

namespace {

constexpr double kNoiseRefRms = 0.05; // fixed digital masker level

std::size_t to_samples(double seconds, int rate) {
  return static_cast<std::size_t>(std::llround(seconds * rate));
}

void append_silence(std::vector<float>& out, std::size_t n) {
  out.insert(out.end(), n, 0.0f);
}

} // namespace

std::pair<double, double> signature_freqs(int digit) {
  // Two disjoint banks, 120 Hz apart, everything well below 8 kHz Nyquist.
  return {600.0 + 120.0 * digit, 2400.0 + 120.0 * digit};
}

Waveform digit_signature(int digit, int sample_rate) {
  Waveform::check_rate(sample_rate);
  const auto [fa, fb] = signature_freqs(digit);
  const std::size_t n = to_samples(kSignatureDuration, sample_rate);
  const std::size_t ramp = to_samples(kSignatureRamp, sample_rate);
  std::vector<float> s(n);
  const double wa = 2.0 * M_PI * fa / sample_rate;
  const double wb = 2.0 * M_PI * fb / sample_rate;
  for (std::size_t i = 0; i < n; ++i) {
    double env = 1.0;
    if (i < ramp)
      env = 0.5 - 0.5 * std::cos(M_PI * static_cast<double>(i) / ramp);
    else if (i + ramp >= n)
      env = 0.5 - 0.5 * std::cos(M_PI * static_cast<double>(n - 1 - i) / ramp);
    s[i] = static_cast<float>(env * (std::sin(wa * static_cast<double>(i)) +
                                     std::sin(wb * static_cast<double>(i))));
  }
  Waveform w{std::move(s), sample_rate};
  const double r = rms(w);
  if (r > 0.0)
    kernels::scale(w.samples.data(), w.samples.data(), w.samples.size(),
                   static_cast<float>(1.0 / r));
  return w;
}

void StimulusManifest::validate() const {
  Waveform::check_rate(sample_rate);
  if (!synthetic) {
    for (int d = 0; d <= 9; ++d)
      if (digit_assets[static_cast<std::size_t>(d)].empty())
        throw MissingAsset("manifest has no asset for digit " + std::to_string(d));
  }
  for (double c : level_corrections_db)
    if (!std::isfinite(c)) throw ConfigError("level correction must be finite");
}

StimulusManifest StimulusManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + path + " is not valid JSON: " + e.what());
  }
  StimulusManifest m;
  m.synthetic = j.value("synthetic", false);
  m.sample_rate = j.value("sample_rate", 16000);
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    return fp.is_absolute() ? p : (base / fp).string();
  };
  if (j.contains("digit_assets")) {
    const auto& assets = j.at("digit_assets");
    for (int d = 0; d <= 9; ++d) {
      const std::string key = std::to_string(d);
      if (assets.contains(key))
        m.digit_assets[static_cast<std::size_t>(d)] = resolve(assets.at(key).get<std::string>());
    }
  }
  if (j.contains("level_corrections_db")) {
    const auto& corr = j.at("level_corrections_db");
    for (int d = 0; d <= 9; ++d) {
      const std::string key = std::to_string(d);
      if (corr.contains(key))
        m.level_corrections_db[static_cast<std::size_t>(d)] = corr.at(key).get<double>();
    }
  }
  if (j.contains("noise_tokens"))
    for (const auto& t : j.at("noise_tokens")) m.noise_tokens.push_back(resolve(t.get<std::string>()));
  if (j.contains("timing")) {
    const auto& t = j.at("timing");
    m.timing.lead_s = t.value("lead_s", m.timing.lead_s);
    m.timing.lead_jitter_s = t.value("lead_jitter_s", m.timing.lead_jitter_s);
    m.timing.gap_s = t.value("gap_s", m.timing.gap_s);
    m.timing.gap_jitter_s = t.value("gap_jitter_s", m.timing.gap_jitter_s);
    m.timing.trail_s = t.value("trail_s", m.timing.trail_s);
    m.timing.trail_jitter_s = t.value("trail_jitter_s", m.timing.trail_jitter_s);
  }
  m.validate();
  return m;
}

SynthResult synth_triplet(const DigitTriplet& t, const StimulusManifest& m,
                          double snr_db, Rng& rng) {
  m.validate();
  const int rate = m.sample_rate;
  const auto& tm = m.timing;

  // Jitter draws in a fixed order so outputs are seed-reproducible.
  const double lead = tm.lead_s + rng.uniform(-tm.lead_jitter_s, tm.lead_jitter_s);
  const double gap1 = tm.gap_s + rng.uniform(-tm.gap_jitter_s, tm.gap_jitter_s);
  const double gap2 = tm.gap_s + rng.uniform(-tm.gap_jitter_s, tm.gap_jitter_s);
  const double trail = tm.trail_s + rng.uniform(-tm.trail_jitter_s, tm.trail_jitter_s);

  SynthResult out;
  std::vector<float> speech;
  append_silence(speech, to_samples(lead, rate));
  const std::array<double, 2> gaps{gap1, gap2};
  for (int k = 0; k < 3; ++k) {
    const int digit = t.digits()[static_cast<std::size_t>(k)];
    Waveform dw;
    if (m.synthetic) {
      dw = digit_signature(digit, rate);
    } else {
      const std::string& path = m.digit_assets[static_cast<std::size_t>(digit)];
      try {
        dw = wav_read(path);
      } catch (const MalformedWav&) {
        throw MissingAsset("digit asset unreadable: " + path);
      }
      if (dw.sample_rate != rate)
        throw WrongSampleRate("digit asset " + path + " is " +
                              std::to_string(dw.sample_rate) + " Hz, manifest wants " +
                              std::to_string(rate));
    }
    const double corr = m.level_corrections_db[static_cast<std::size_t>(digit)];
    const auto gain = static_cast<float>(std::pow(10.0, corr / 20.0));
    const std::size_t begin = speech.size();
    speech.resize(begin + dw.samples.size());
    kernels::scale(speech.data() + begin, dw.samples.data(), dw.samples.size(), gain);
    out.digit_spans.emplace_back(begin, speech.size());
    if (k < 2) append_silence(speech, to_samples(gaps[static_cast<std::size_t>(k)], rate));
  }
  append_silence(speech, to_samples(trail, rate));
  const std::size_t total = speech.size();

  // Masker, same length as the assembled triplet.
  std::vector<float> noise(total);
  if (m.noise_tokens.empty()) {
    for (auto& v : noise) v = static_cast<float>(rng.gaussian(0.0, 1.0));
  } else {
    const auto idx = static_cast<std::size_t>(rng.uniform_below(m.noise_tokens.size()));
    Waveform tok = wav_read(m.noise_tokens[idx]);
    if (tok.sample_rate != rate)
      throw WrongSampleRate("noise token rate mismatch: " + m.noise_tokens[idx]);
    if (tok.samples.size() < total)
      throw ConfigError("noise token shorter than assembled triplet: " + m.noise_tokens[idx]);
    std::copy(tok.samples.begin(), tok.samples.begin() + static_cast<long>(total), noise.begin());
  }

  // SNR is realized over the speech-active region for both components.
  auto active_rms = [&](const std::vector<float>& buf) {
    double ss = 0.0;
    std::size_t n = 0;
    for (const auto& [b, e] : out.digit_spans) {
      ss += kernels::sum_squares(buf.data() + b, e - b);
      n += e - b;
    }
    return n > 0 ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
  };
  const double raw_speech_rms = active_rms(speech);
  const double raw_noise_rms = active_rms(noise);
  if (raw_speech_rms <= 0.0) throw MissingAsset("assembled speech is silent");
  if (raw_noise_rms <= 0.0) throw ConfigError("noise token is silent");

  const double noise_gain = kNoiseRefRms / raw_noise_rms;
  const double speech_gain =
      kNoiseRefRms * std::pow(10.0, snr_db / 20.0) / raw_speech_rms;

  out.speech.sample_rate = rate;
  out.noise.sample_rate = rate;
  out.mix.sample_rate = rate;
  out.speech.samples.resize(total);
  out.noise.samples.resize(total);
  out.mix.samples.resize(total);
  kernels::scale(out.speech.samples.data(), speech.data(), total,
                 static_cast<float>(speech_gain));
  kernels::scale(out.noise.samples.data(), noise.data(), total,
                 static_cast<float>(noise_gain));
  kernels::mix(out.mix.samples.data(), speech.data(), static_cast<float>(speech_gain),
               noise.data(), static_cast<float>(noise_gain), total);

  const float peak = kernels::peak_abs(out.mix.samples.data(), total);
  if (peak > 1.0f)
    throw ClippingAfterGain("mix peaks at " + std::to_string(peak) +
                            " after gain staging (snr " + std::to_string(snr_db) + " dB)");

  out.speech_rms = active_rms(out.speech.samples);
  out.noise_rms = active_rms(out.noise.samples);
  return out;
}

Waveform synth_spoken_digits(const std::vector<int>& digits, int sample_rate,
                             double target_rms) {
  Waveform::check_rate(sample_rate);
  std::vector<float> buf;
  append_silence(buf, to_samples(0.2, sample_rate));
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    Waveform sig = digit_signature(digits[k], sample_rate);
    const std::size_t begin = buf.size();
    buf.insert(buf.end(), sig.samples.begin(), sig.samples.end());
    spans.emplace_back(begin, buf.size());
    if (k + 1 < digits.size()) append_silence(buf, to_samples(0.15, sample_rate));
  }
  append_silence(buf, to_samples(0.2, sample_rate));

  Waveform w{std::move(buf), sample_rate};
  double ss = 0.0;
  std::size_t n = 0;
  for (const auto& [b, e] : spans) {
    ss += kernels::sum_squares(w.samples.data() + b, e - b);
    n += e - b;
  }
  if (n > 0 && ss > 0.0) {
    const double gain = target_rms / std::sqrt(ss / static_cast<double>(n));
    kernels::scale(w.samples.data(), w.samples.data(), w.samples.size(),
                   static_cast<float>(gain));
  }
  return w;
}

} // namespace din::audio
