#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "din/errors.hpp"

namespace din {

// Three pairwise-distinct digits 0-9, presented as one stimulus.
class DigitTriplet {
public:
  DigitTriplet(int d1, int d2, int d3) : digits_{d1, d2, d3} {
    for (int d : digits_)
      if (d < 0 || d > 9) throw ConfigError("triplet digit out of range: " + std::to_string(d));
    if (d1 == d2 || d1 == d3 || d2 == d3)
      throw ConfigError("triplet digits must be pairwise distinct");
  }

  int d1() const { return digits_[0]; }
  int d2() const { return digits_[1]; }
  int d3() const { return digits_[2]; }
  const std::array<int, 3>& digits() const { return digits_; }

  bool operator==(const DigitTriplet& o) const { return digits_ == o.digits_; }

  std::string to_string() const; // "5,2,8"

private:
  std::array<int, 3> digits_;
};

struct TripletList {
  std::string list_id;
  std::vector<DigitTriplet> triplets; // exactly 24

  static TripletList checked(std::string id, std::vector<DigitTriplet> ts) {
    if (ts.size() != 24)
      throw ConfigError("triplet list '" + id + "' must contain exactly 24 triplets, got " +
                        std::to_string(ts.size()));
    return TripletList{std::move(id), std::move(ts)};
  }
};

enum class MatchPolicy { kExact, kContiguous };

std::string to_string(MatchPolicy p);
MatchPolicy match_policy_from_string(const std::string& s);

struct StaircaseConfig {
  double start_snr = -5.0;      // dB
  double first_step_up = 4.0;   // dB, first-triplet retries only
  double step = 2.0;            // dB
  double noise_level = 65.0;    // dB SPL, fixed
  double speech_level_min = 42.0;
  double speech_level_max = 75.0;
  int n_trials = 24;
  int srt_window_start = 5; // first SNR_j entering the SRT average
  int max_first_trial_presentations = 10;
  MatchPolicy match_policy = MatchPolicy::kContiguous;

  double snr_min() const { return speech_level_min - noise_level; } // -23 with defaults
  double snr_max() const { return speech_level_max - noise_level; } // +10 with defaults
  double clamp_snr(double snr) const {
    if (snr < snr_min()) return snr_min();
    if (snr > snr_max()) return snr_max();
    return snr;
  }

  void validate() const {
    if (!(speech_level_min < noise_level && noise_level < speech_level_max))
      throw ConfigError("require speech_level_min < noise_level < speech_level_max");
    if (srt_window_start > n_trials)
      throw ConfigError("srt_window_start must be <= n_trials");
    if (srt_window_start < 1 || n_trials < 1)
      throw ConfigError("srt_window_start and n_trials must be positive");
    if (step <= 0 || first_step_up <= 0)
      throw ConfigError("step sizes must be positive");
    if (max_first_trial_presentations < 1)
      throw ConfigError("max_first_trial_presentations must be >= 1");
  }
};

struct TrialRecord {
  int trial_index = 0;        // 1-based
  int presentation_count = 1; // > 1 only for trial 1
  double snr = 0.0;           // clamped presentation SNR (SNR_j)
  std::array<int, 3> presented{};
  std::vector<std::string> raw_transcript;
  std::vector<int> digit_sequence; // after lexicon filtering
  bool scored_correct = false;
};

struct SessionResult {
  std::string list_id;
  std::vector<TrialRecord> trials;             // the n_trials scored trials
  std::vector<TrialRecord> first_trial_repeats; // incorrect presentations of triplet 1
  double final_snr = 0.0; // SNR_{n+1}, clamped
  double srt_mean = 0.0;
  double srt_sd = 0.0;
  std::string started_utc;
  std::string finished_utc;
  StaircaseConfig config;
  std::uint64_t seed = 0;
  bool seeded = false; // true when a simulated listener drove the session
  std::string asr_desc;
  std::string listener_desc;
};

// The ten built-in lists (deterministic stand-ins for the unpublished
// published-test materials): list ids "1".."10", 24 triplets each, drawn
// from a fixed 120-triplet pool of distinct-digit triplets.
const std::vector<TripletList>& builtin_lists();
const TripletList& builtin_list(const std::string& id);

} // namespace din
