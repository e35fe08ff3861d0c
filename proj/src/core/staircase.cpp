#include "din/core/staircase.hpp"

#include <algorithm>
#include <cmath>

namespace din {

bool score_response(const DigitTriplet& presented, const std::vector<int>& seq,
                    MatchPolicy policy) {
  const auto& t = presented.digits();
  if (policy == MatchPolicy::kExact)
    return seq.size() == 3 && seq[0] == t[0] && seq[1] == t[1] && seq[2] == t[2];
  if (seq.size() < 3) return false;
  for (std::size_t i = 0; i + 3 <= seq.size(); ++i)
    if (seq[i] == t[0] && seq[i + 1] == t[1] && seq[i + 2] == t[2]) return true;
  return false;
}

double next_snr(StaircaseState& state, bool scored_correct, const StaircaseConfig& cfg) {
  if (!state.first_resolved) {
    ++state.first_presentations;
    if (scored_correct) {
      state.first_resolved = true;
      state.trial_index = 2;
      state.snr = cfg.clamp_snr(state.snr - cfg.step);
    } else {
      if (state.first_presentations >= cfg.max_first_trial_presentations)
        throw FirstTripletFailure("first triplet not scored correct after " +
                                  std::to_string(state.first_presentations) +
                                  " presentations");
      state.snr = cfg.clamp_snr(state.snr + cfg.first_step_up);
    }
    return state.snr;
  }
  state.trial_index += 1;
  state.snr = cfg.clamp_snr(state.snr + (scored_correct ? -cfg.step : cfg.step));
  return state.snr;
}

std::pair<double, double> compute_srt(const std::vector<double>& snr_history,
                                      int window_start, int n_trials) {
  // snr_history[k] = SNR_{k+2}; the window is j in [window_start, n_trials+1].
  const int last_j = n_trials + 1;
  if (window_start < 2 || window_start > last_j)
    throw IncompleteSession("SRT window start out of range");
  const auto needed = static_cast<std::size_t>(last_j - 2 + 1);
  if (snr_history.size() < needed)
    throw IncompleteSession("need SNR_2..SNR_" + std::to_string(last_j) + " (" +
                            std::to_string(needed) + " values), got " +
                            std::to_string(snr_history.size()));
  const auto first = static_cast<std::size_t>(window_start - 2);
  const auto count = static_cast<std::size_t>(last_j - window_start + 1);
  double sum = 0.0;
  for (std::size_t k = first; k < first + count; ++k) sum += snr_history[k];
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (std::size_t k = first; k < first + count; ++k) {
    const double d = snr_history[k] - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / static_cast<double>(count))};
}

std::pair<double, double> compute_srt(const std::vector<double>& snr_history,
                                      const StaircaseConfig& cfg) {
  return compute_srt(snr_history, cfg.srt_window_start, cfg.n_trials);
}

} // namespace din
