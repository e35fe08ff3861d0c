#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "din/asr/backend.hpp"
#include "din/audio/synth.hpp"
#include "din/audio/waveform.hpp"
#include "din/core/staircase.hpp"
#include "din/core/types.hpp"
#include "din/rng.hpp"
#include "din/sim/listener.hpp"

namespace din {

// Playback endpoint. Live hardware is out of scope; tests capture or drop.
class AudioSink {
public:
  virtual ~AudioSink() = default;
  virtual void play(const audio::Waveform& stimulus) = 0;
};

class NullSink final : public AudioSink {
public:
  void play(const audio::Waveform&) override {}
};

class CaptureSink final : public AudioSink {
public:
  void play(const audio::Waveform& stimulus) override { played.push_back(stimulus); }
  std::vector<audio::Waveform> played;
};

// The "recorder": yields the participant's spoken response for one
// presentation. Capture is gated to start after playback ends, so the
// simulated responses contain no stimulus bleed.
class ResponseSource {
public:
  virtual ~ResponseSource() = default;
  virtual audio::Waveform record(const DigitTriplet& presented, double snr_db,
                                 const audio::Waveform& stimulus) = 0;
  virtual std::string describe() const = 0;
};

// Simulated participant: spoken correctness drawn from a psychometric model,
// response rendered as clean digit signatures at mic_rate (40 kHz like the
// paper's recorder; the session downsamples for the ASR). Incorrect responses
// substitute one digit with one not in the triplet.
class SimulatedListener final : public ResponseSource {
public:
  using Model = std::function<double(double snr_db)>;

  SimulatedListener(Model p_correct, std::uint64_t seed, std::string description,
                    int mic_rate = 40000)
      : model_(std::move(p_correct)),
        rng_(derive_seed(seed, streams::kListener)),
        description_(std::move(description)),
        mic_rate_(mic_rate) {}

  static std::unique_ptr<SimulatedListener> echo(std::uint64_t seed, int mic_rate = 40000);
  static std::unique_ptr<SimulatedListener> logistic(const sim::LogisticListener& l,
                                                     std::uint64_t seed, int mic_rate = 40000);

  audio::Waveform record(const DigitTriplet& presented, double snr_db,
                         const audio::Waveform& stimulus) override;
  std::string describe() const override { return description_; }

private:
  Model model_;
  Rng rng_;
  std::string description_;
  int mic_rate_;
};

struct SessionIO {
  audio::StimulusManifest manifest;
  asr::DigitLexicon lexicon = asr::DigitLexicon::dutch_default();
  asr::AsrBackend* backend = nullptr;
  AudioSink* sink = nullptr;
  ResponseSource* responder = nullptr;
};

// Runs one adaptive session: present -> record -> decode -> score -> step,
// strictly sequential. FirstTripletFailure / AsrUnavailable / AsrTimeout /
// AudioDeviceError propagate; when partial_out is given it holds everything
// recorded up to the failure so callers can persist the partial log.
SessionResult run_session(const TripletList& list, const StaircaseConfig& cfg,
                          SessionIO& io, std::uint64_t seed,
                          SessionResult* partial_out = nullptr);

} // namespace din
