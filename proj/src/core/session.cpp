#include "din/core/session.hpp"

#include <algorithm>

#include "din/audio/resample.hpp"
#include "din/core/clock.hpp"

namespace din {

std::unique_ptr<SimulatedListener> SimulatedListener::echo(std::uint64_t seed, int mic_rate) {
  return std::make_unique<SimulatedListener>([](double) { return 1.0; }, seed, "echo",
                                             mic_rate);
}

std::unique_ptr<SimulatedListener> SimulatedListener::logistic(const sim::LogisticListener& l,
                                                               std::uint64_t seed,
                                                               int mic_rate) {
  l.validate();
  const std::string desc = "logistic:" + std::to_string(l.midpoint_db) + "," +
                           std::to_string(l.slope_per_db) +
                           (l.lapse > 0.0 ? "," + std::to_string(l.lapse) : "");
  return std::make_unique<SimulatedListener>(
      [l](double snr) { return l.p_correct(snr); }, seed, desc, mic_rate);
}

audio::Waveform SimulatedListener::record(const DigitTriplet& presented, double snr_db,
                                          const audio::Waveform&) {
  const bool correct = rng_.bernoulli(model_(snr_db));
  std::vector<int> spoken(presented.digits().begin(), presented.digits().end());
  if (!correct) {
    // Substitute one digit with one outside the triplet.
    const int pos = rng_.uniform_int(0, 2);
    std::vector<int> candidates;
    for (int d = 0; d <= 9; ++d)
      if (d != presented.d1() && d != presented.d2() && d != presented.d3())
        candidates.push_back(d);
    spoken[static_cast<std::size_t>(pos)] =
        candidates[static_cast<std::size_t>(rng_.uniform_below(candidates.size()))];
  }
  return audio::synth_spoken_digits(spoken, mic_rate_);
}

namespace {

audio::Waveform to_asr_rate(const audio::Waveform& response, int want_rate) {
  if (response.sample_rate == want_rate) return response;
  if (response.sample_rate == 40000 && want_rate == 16000)
    return audio::resample_40k_to_16k(response);
  throw WrongSampleRate("cannot adapt response at " +
                        std::to_string(response.sample_rate) + " Hz to ASR rate " +
                        std::to_string(want_rate));
}

} // namespace

SessionResult run_session(const TripletList& list, const StaircaseConfig& cfg,
                          SessionIO& io, std::uint64_t seed, SessionResult* partial_out) {
  cfg.validate();
  io.lexicon.validate();
  if (io.backend == nullptr || io.sink == nullptr || io.responder == nullptr)
    throw ConfigError("session needs a backend, a sink and a responder");
  if (static_cast<int>(list.triplets.size()) != cfg.n_trials)
    throw ConfigError("list '" + list.list_id + "' has " +
                      std::to_string(list.triplets.size()) + " triplets, config wants " +
                      std::to_string(cfg.n_trials));

  SessionResult result;
  result.list_id = list.list_id;
  result.config = cfg;
  result.seed = seed;
  result.seeded = true;
  result.asr_desc = io.backend->describe();
  result.listener_desc = io.responder->describe();
  result.started_utc = utc_now_iso8601();
  if (partial_out != nullptr) *partial_out = result;

  Rng stim_rng(derive_seed(seed, streams::kStimuli));
  StaircaseState state = StaircaseState::initial(cfg);
  std::vector<double> history; // SNR_2 .. SNR_{n+1}
  history.reserve(static_cast<std::size_t>(cfg.n_trials));

  auto present_and_score = [&](const DigitTriplet& triplet, double snr, int trial_index,
                               int presentation) -> TrialRecord {
    const audio::SynthResult stim = audio::synth_triplet(triplet, io.manifest, snr, stim_rng);
    io.sink->play(stim.mix);
    const audio::Waveform response = io.responder->record(triplet, snr, stim.mix);
    const asr::Transcript transcript = io.backend->decode(to_asr_rate(response, 16000));

    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.presentation_count = presentation;
    rec.snr = snr;
    rec.presented = triplet.digits();
    rec.raw_transcript = transcript.tokens;
    rec.digit_sequence = asr::extract_digits(transcript, io.lexicon);
    rec.scored_correct = score_response(triplet, rec.digit_sequence, cfg.match_policy);
    return rec;
  };

  auto run = [&]() {
    // Triplet 1: repeat at +first_step_up until correct, bounded by the guard.
    for (;;) {
      TrialRecord rec = present_and_score(list.triplets[0], state.snr, 1,
                                          state.first_presentations + 1);
      const bool correct = rec.scored_correct;
      if (correct) {
        result.trials.push_back(rec);
      } else {
        result.first_trial_repeats.push_back(rec);
      }
      const double next = next_snr(state, correct, cfg); // throws on guard
      if (correct) {
        history.push_back(next); // SNR_2
        break;
      }
    }
    // presentation_count on the scored record = total presentations of triplet 1
    result.trials.back().presentation_count = state.first_presentations;

    for (int j = 2; j <= cfg.n_trials; ++j) {
      TrialRecord rec =
          present_and_score(list.triplets[static_cast<std::size_t>(j - 1)], state.snr, j, 1);
      result.trials.push_back(rec);
      history.push_back(next_snr(state, rec.scored_correct, cfg)); // SNR_{j+1}
    }

    result.final_snr = history.back(); // SNR_{n+1}, clamped like the rest
    const auto [mean, sd] = compute_srt(history, cfg);
    result.srt_mean = mean;
    result.srt_sd = sd;
    result.finished_utc = utc_now_iso8601();
  };

  try {
    run();
  } catch (...) {
    result.finished_utc = utc_now_iso8601();
    if (partial_out != nullptr) *partial_out = result;
    throw;
  }
  if (partial_out != nullptr) *partial_out = result;
  return result;
}

} // namespace din
