#pragma once

#include <deque>
#include <memory>
#include <string>

#include "din/asr/transcript.hpp"
#include "din/audio/waveform.hpp"

namespace din::asr {

struct AsrBackendSpec {
  enum class Kind { kExternalProcess, kMockTone, kScripted };
  Kind kind = Kind::kMockTone;
  std::string command_template; // must contain {wav}
  std::string working_dir;
  double timeout_s = 30.0;
  int expected_sample_rate = 16000;

  void validate() const {
    if (timeout_s <= 0.0) throw ConfigError("ASR timeout must be positive");
    if (kind == Kind::kExternalProcess &&
        command_template.find("{wav}") == std::string::npos)
      throw ConfigError("ASR command template must contain the {wav} placeholder");
  }
};

class AsrBackend {
public:
  virtual ~AsrBackend() = default;
  virtual Transcript decode(const audio::Waveform& response) = 0;
  virtual std::string describe() const = 0;
};

// Band-energy detector for the synthetic two-tone digit signatures.
// Silence and unrecognized segments produce no tokens.
Transcript mock_tone_decode(const audio::Waveform& audio);

class MockToneBackend final : public AsrBackend {
public:
  Transcript decode(const audio::Waveform& response) override {
    return mock_tone_decode(response);
  }
  std::string describe() const override { return "mock-tone"; }
};

// Replays a fixed transcript sequence; decode past the end raises
// AsrUnavailable. Unit-test double.
class ScriptedBackend final : public AsrBackend {
public:
  explicit ScriptedBackend(std::deque<std::vector<std::string>> responses)
      : responses_(std::move(responses)) {}

  Transcript decode(const audio::Waveform&) override {
    if (responses_.empty()) throw AsrUnavailable("scripted backend exhausted");
    Transcript t;
    t.tokens = std::move(responses_.front());
    responses_.pop_front();
    t.source = TranscriptSource::kMock;
    return t;
  }
  std::string describe() const override { return "scripted"; }

private:
  std::deque<std::vector<std::string>> responses_;
};

// Writes the response to a temporary WAV, runs the configured command and
// tokenizes its stdout (whitespace split + ASCII case fold, nothing else).
Transcript decode_external(const audio::Waveform& audio, const AsrBackendSpec& spec);

class ExternalBackend final : public AsrBackend {
public:
  explicit ExternalBackend(AsrBackendSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
  }
  Transcript decode(const audio::Waveform& response) override {
    return decode_external(response, spec_);
  }
  std::string describe() const override { return "external:" + spec_.command_template; }

private:
  AsrBackendSpec spec_;
};

} // namespace din::asr
