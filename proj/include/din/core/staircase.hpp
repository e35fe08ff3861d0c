#pragma once

#include <utility>
#include <vector>

#include "din/core/types.hpp"

namespace din {

// exact: the filtered digit sequence equals the triplet.
// contiguous (default): the triplet occurs as a contiguous run, so leading
// or trailing insertions do not change the score.
bool score_response(const DigitTriplet& presented, const std::vector<int>& digit_sequence,
                    MatchPolicy policy);

// Mutable state of one adaptive track.
struct StaircaseState {
  int trial_index = 1;         // 1-based
  double snr = 0.0;            // SNR of the presentation just scored
  bool first_resolved = false; // triplet 1 scored correct yet?
  int first_presentations = 0; // presentations of triplet 1 so far

  static StaircaseState initial(const StaircaseConfig& cfg) {
    return {1, cfg.start_snr, false, 0};
  }
};

// Advances the staircase after scoring one presentation and returns the next
// presentation SNR (clamped). While triplet 1 is unresolved an incorrect
// response repeats the trial at snr + first_step_up; the guard aborts after
// max_first_trial_presentations all-incorrect presentations.
double next_snr(StaircaseState& state, bool scored_correct, const StaircaseConfig& cfg);

// Mean and population SD (divide by count) of SNR_j for j in
// [window_start, n_trials + 1]. snr_history holds SNR_2 .. SNR_{n_trials+1}
// in order, i.e. the presentation SNRs of trials 2..n plus the final
// computed SNR.
std::pair<double, double> compute_srt(const std::vector<double>& snr_history,
                                      int window_start, int n_trials);
std::pair<double, double> compute_srt(const std::vector<double>& snr_history,
                                      const StaircaseConfig& cfg);

} // namespace din
