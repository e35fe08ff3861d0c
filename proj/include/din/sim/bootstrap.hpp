#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "din/core/types.hpp"
#include "din/eval/metrics.hpp"
#include "din/rng.hpp"
#include "din/sim/frame.hpp"

namespace din::sim {

// Maximum-likelihood Gaussian fit: sample mean and population SD.
std::pair<double, double> fit_gaussian(const std::vector<double>& samples);

// Which reading of the Table-1 probabilities drives score flips.
enum class EffectMode { kConditional, kJoint };
std::string to_string(EffectMode m);

// Flip probability given the drawn spoken correctness under either mode.
double flip_probability(const eval::ErrorEffectModel& effect, EffectMode mode,
                        bool spoken_correct);

// One simulated DIN test: trial 1 forced correct at frame.first_correct_snr,
// later trials drawn Bernoulli(lookup_p); trials in error_indices have their
// recorded score flipped with the effect model's probability. Score draws
// come from score_rng, flip draws from error_rng (separate streams keep
// common-random-number comparisons exact). Returns the run's SRT mean.
double simulate_run(const SamplingFrame& frame, const StaircaseConfig& cfg,
                    const std::vector<int>& error_indices,
                    const eval::ErrorEffectModel& effect, EffectMode mode,
                    Rng& score_rng, Rng& error_rng);

struct ErrorScenario {
  int e = 0;
  double mu = 0.0;
  double sigma = 0.0;
  double deviation = 0.0; // |baseline mu - mu|
  double histogram_origin = 0.0;
  std::vector<long long> histogram; // 0.5 dB bins, counts sum to n_runs
};

struct BootstrapReport {
  std::uint64_t seed = 0;
  int n_runs = 0;
  int e_max = 0;
  EffectMode mode = EffectMode::kConditional;
  eval::ErrorEffectModel effect;
  SamplingFrame frame;
  StaircaseConfig config;
  double baseline_mu = 0.0;    // e = 0 scenario
  double baseline_sigma = 0.0;
  std::vector<ErrorScenario> scenarios; // e = 0..e_max

  nlohmann::json to_json() const;
  std::string histograms_csv() const; // e,bin_lo,bin_hi,count rows
};

inline constexpr double kHistogramBin = 0.5;

// For each e in 0..e_max runs n_runs simulations, drawing e distinct error
// indices uniformly from {2..n_trials} per run. Sub-seeds derive from
// (seed, stream, e, run), so reports are bit-identical for a given seed no
// matter how many threads execute (threads <= 0 picks the hardware count).
BootstrapReport bootstrap(const SamplingFrame& frame, const StaircaseConfig& cfg,
                          const eval::ErrorEffectModel& effect, int n_runs, int e_max,
                          std::uint64_t seed, EffectMode mode = EffectMode::kConditional,
                          int threads = 0);

} // namespace din::sim
