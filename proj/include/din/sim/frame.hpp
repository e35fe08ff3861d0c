#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "din/core/types.hpp"

namespace din::sim {

struct FrameEntry {
  double snr = 0.0;
  long long n_presented = 0;
  long long n_correct = 0;
  double p() const {
    return n_presented > 0
               ? static_cast<double>(n_correct) / static_cast<double>(n_presented)
               : 0.0;
  }
};

// Per-participant empirical map SNR -> P(correct spoken response), the
// bootstrap's resampling distribution.
struct SamplingFrame {
  std::vector<FrameEntry> entries; // sorted by snr, unique
  std::string source_session;
  double first_correct_snr = 0.0; // SNR at which triplet 1 was scored correct

  void validate() const;
};

// Tallies scored correctness per presentation SNR over all scored trials,
// first-triplet repeats included at their SNRs.
SamplingFrame build_frame(const SessionResult& session);

// Exact entry if present, else nearest SNR; equidistant neighbors resolve
// to the lower SNR.
double lookup_p(const SamplingFrame& frame, double snr);

nlohmann::json frame_to_json(const SamplingFrame& frame);
SamplingFrame frame_from_json(const nlohmann::json& j);

} // namespace din::sim
