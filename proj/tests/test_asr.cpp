#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "din/asr/backend.hpp"
#include "din/audio/resample.hpp"
#include "din/audio/synth.hpp"
#include "din/core/types.hpp"
#include "din/rng.hpp"

using namespace din;
using namespace din::asr;

namespace {

Transcript make_transcript(std::vector<std::string> tokens) {
  Transcript t;
  t.tokens = std::move(tokens);
  return t;
}

std::vector<int> decode_digits(const audio::Waveform& w) {
  const auto lex = DigitLexicon::dutch_default();
  return extract_digits(mock_tone_decode(w), lex);
}

} // namespace

// --- lexicon + extract_digits ----------------------------------------------

TEST_CASE("digit extraction drops non-digit words and keeps order") {
  const auto lex = DigitLexicon::dutch_default();
  CHECK(extract_digits(make_transcript({"vijf", "twee", "acht"}), lex) ==
        std::vector<int>{5, 2, 8});
  CHECK(extract_digits(make_transcript({"eh", "vijf", "twee", "acht", "ja"}), lex) ==
        std::vector<int>{5, 2, 8});
  CHECK(extract_digits(make_transcript({"1", "5", "2", "8"}), lex) ==
        std::vector<int>{1, 5, 2, 8});
  CHECK(extract_digits(make_transcript({}), lex).empty());
  CHECK(extract_digits(make_transcript({"VIJF", "Twee"}), lex) == std::vector<int>{5, 2});
  CHECK(extract_digits(make_transcript({"een", "\xc3\xa9\xc3\xa9n"}), lex) ==
        std::vector<int>{1, 1});
  // word-by-word filtering: compounds are not expanded
  CHECK(extract_digits(make_transcript({"vijfentwintig"}), lex).empty());
}

TEST_CASE("extraction is idempotent on digit-only sequences") {
  const auto lex = DigitLexicon::dutch_default();
  Rng rng(77);
  for (int it = 0; it < 50; ++it) {
    std::vector<std::string> tokens;
    std::vector<int> digits;
    const int len = rng.uniform_int(0, 6);
    for (int i = 0; i < len; ++i) {
      const int d = rng.uniform_int(0, 9);
      digits.push_back(d);
      tokens.push_back(DigitLexicon::canonical_word(d));
    }
    const auto first = extract_digits(make_transcript(tokens), lex);
    CHECK(first == digits);
    std::vector<std::string> again;
    for (int d : first) again.push_back(DigitLexicon::canonical_word(d));
    CHECK(extract_digits(make_transcript(again), lex) == first);
  }
}

TEST_CASE("lexicon rejects ambiguity and enforces coverage") {
  auto lex = DigitLexicon::dutch_default();
  CHECK_NOTHROW(lex.validate());
  CHECK_THROWS_AS(lex.add("vijf", 6), ConfigError);
  DigitLexicon sparse;
  sparse.add("nul", 0);
  CHECK_THROWS_AS(sparse.validate(), ConfigError);
}

// --- external decoder ---------------------------------------------------------

TEST_CASE("external command contract") {
  audio::Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(1600, 0.1f);

  AsrBackendSpec spec;
  spec.kind = AsrBackendSpec::Kind::kExternalProcess;
  spec.timeout_s = 10.0;

  SUBCASE("stdout becomes the transcript, case folded") {
    spec.command_template = "cat {wav} > /dev/null && printf 'VIJF Twee  acht\\n'";
    const Transcript t = decode_external(w, spec);
    CHECK(t.tokens == std::vector<std::string>{"vijf", "twee", "acht"});
    CHECK(t.source == TranscriptSource::kExternalAsr);
  }
  SUBCASE("nonzero exit raises AsrUnavailable") {
    spec.command_template = "cat {wav} > /dev/null; exit 3";
    CHECK_THROWS_AS(decode_external(w, spec), AsrUnavailable);
  }
  SUBCASE("missing binary raises AsrUnavailable") {
    spec.command_template = "/nonexistent/decoder {wav}";
    CHECK_THROWS_AS(decode_external(w, spec), AsrUnavailable);
  }
  SUBCASE("hang raises AsrTimeout") {
    spec.command_template = "sleep 30; echo vijf # {wav}";
    spec.timeout_s = 0.3;
    CHECK_THROWS_AS(decode_external(w, spec), AsrTimeout);
  }
  SUBCASE("template without the placeholder is a config error") {
    spec.command_template = "echo vijf";
    CHECK_THROWS_AS(decode_external(w, spec), ConfigError);
  }
  SUBCASE("sample-rate mismatch is rejected") {
    spec.command_template = "echo vijf # {wav}";
    audio::Waveform w40;
    w40.sample_rate = 40000;
    w40.samples.assign(4000, 0.1f);
    CHECK_THROWS_AS(decode_external(w40, spec), WrongSampleRate);
  }
}

TEST_CASE("scripted backend replays then runs dry") {
  ScriptedBackend backend({{{"vijf"}}, {{"twee"}}});
  audio::Waveform w;
  w.sample_rate = 16000;
  CHECK(backend.decode(w).tokens == std::vector<std::string>{"vijf"});
  CHECK(backend.decode(w).tokens == std::vector<std::string>{"twee"});
  CHECK_THROWS_AS(backend.decode(w), AsrUnavailable);
}

// --- mock tone decoder ----------------------------------------------------------

TEST_CASE("round trip: every built-in triplet decodes at snr >= 0") {
  const auto manifest = audio::StimulusManifest::synthetic_default();
  std::uint64_t seed = 1;
  for (const auto& list : builtin_lists()) {
    for (const auto& t : list.triplets) {
      Rng rng(seed++);
      const auto stim = audio::synth_triplet(t, manifest, 0.0, rng);
      const auto digits = decode_digits(stim.mix);
      CHECK(digits == std::vector<int>{t.d1(), t.d2(), t.d3()});
    }
  }
  for (const auto& t : builtin_list("1").triplets) {
    Rng rng(seed++);
    const auto stim = audio::synth_triplet(t, manifest, 10.0, rng);
    CHECK(decode_digits(stim.mix) == std::vector<int>{t.d1(), t.d2(), t.d3()});
  }
}

TEST_CASE("silence decodes to nothing") {
  audio::Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(16000, 0.0f);
  CHECK(mock_tone_decode(w).tokens.empty());
  audio::Waveform empty;
  empty.sample_rate = 16000;
  CHECK(mock_tone_decode(empty).tokens.empty());
}

TEST_CASE("buried signatures drop digits at snr -40") {
  const auto manifest = audio::StimulusManifest::synthetic_default();
  Rng rng(5);
  const auto stim = audio::synth_triplet({5, 2, 8}, manifest, -40.0, rng);
  const auto digits = decode_digits(stim.mix);
  CHECK(digits.size() < 3); // detector must lose at least one digit
}

TEST_CASE("spoken responses survive the 40 kHz mic path") {
  const std::vector<int> digits{9, 0, 4};
  const audio::Waveform spoken = audio::synth_spoken_digits(digits, 40000);
  CHECK(decode_digits(audio::resample_40k_to_16k(spoken)) == digits);
  CHECK(decode_digits(spoken) == digits); // decoder also handles 40 kHz directly
}
