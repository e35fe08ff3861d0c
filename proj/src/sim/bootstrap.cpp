#include "din/sim/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "din/core/result_json.hpp"
#include "din/core/staircase.hpp"
#include "din/version.hpp"

namespace din::sim {

std::pair<double, double> fit_gaussian(const std::vector<double>& samples) {
  if (samples.empty()) throw EmptySamples("Gaussian fit needs at least one sample");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(samples.size()))};
}

std::string to_string(EffectMode m) {
  return m == EffectMode::kConditional ? "conditional" : "joint";
}

double flip_probability(const eval::ErrorEffectModel& effect, EffectMode mode,
                        bool spoken_correct) {
  if (mode == EffectMode::kConditional) return effect.flip_probability(spoken_correct);
  return spoken_correct ? effect.p_affect_correct : effect.p_affect_incorrect;
}

double simulate_run(const SamplingFrame& frame, const StaircaseConfig& cfg,
                    const std::vector<int>& error_indices,
                    const eval::ErrorEffectModel& effect, EffectMode mode,
                    Rng& score_rng, Rng& error_rng) {
  cfg.validate();
  if (cfg.n_trials > 63) throw ConfigError("simulate_run supports at most 63 trials");

  std::uint64_t error_mask = 0;
  for (int idx : error_indices) {
    if (idx < 2 || idx > cfg.n_trials)
      throw ConfigError("error index " + std::to_string(idx) + " outside 2.." +
                        std::to_string(cfg.n_trials));
    const std::uint64_t bit = 1ULL << idx;
    if (error_mask & bit)
      throw ConfigError("duplicate error index " + std::to_string(idx));
    error_mask |= bit;
  }

  // Trial 1 forced correct at the participant's first-correct SNR.
  double snr = cfg.clamp_snr(cfg.clamp_snr(frame.first_correct_snr) - cfg.step); // SNR_2
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(cfg.n_trials));
  history.push_back(snr);
  for (int j = 2; j <= cfg.n_trials; ++j) {
    const bool spoken = score_rng.bernoulli(lookup_p(frame, snr));
    bool recorded = spoken;
    if (error_mask & (1ULL << j)) {
      if (error_rng.bernoulli(flip_probability(effect, mode, spoken))) recorded = !spoken;
    }
    snr = cfg.clamp_snr(snr + (recorded ? -cfg.step : cfg.step));
    history.push_back(snr);
  }
  return compute_srt(history, cfg).first;
}

namespace {

ErrorScenario summarize(int e, const std::vector<double>& samples) {
  ErrorScenario s;
  s.e = e;
  const auto [mu, sigma] = fit_gaussian(samples);
  s.mu = mu;
  s.sigma = sigma;
  const double lo = *std::min_element(samples.begin(), samples.end());
  const double hi = *std::max_element(samples.begin(), samples.end());
  s.histogram_origin = std::floor(lo / kHistogramBin) * kHistogramBin;
  const auto bins = static_cast<std::size_t>(
      std::floor((hi - s.histogram_origin) / kHistogramBin) + 1);
  s.histogram.assign(bins, 0);
  for (double v : samples) {
    auto b = static_cast<std::size_t>((v - s.histogram_origin) / kHistogramBin);
    if (b >= bins) b = bins - 1;
    s.histogram[b] += 1;
  }
  return s;
}

} // namespace

BootstrapReport bootstrap(const SamplingFrame& frame, const StaircaseConfig& cfg,
                          const eval::ErrorEffectModel& effect, int n_runs, int e_max,
                          std::uint64_t seed, EffectMode mode, int threads) {
  frame.validate();
  cfg.validate();
  if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
  if (e_max < 0 || e_max > cfg.n_trials - 1)
    throw ConfigError("e_max must be in 0.." + std::to_string(cfg.n_trials - 1) +
                      " (only trials 2.." + std::to_string(cfg.n_trials) +
                      " are eligible)");

  BootstrapReport report;
  report.seed = seed;
  report.n_runs = n_runs;
  report.e_max = e_max;
  report.mode = mode;
  report.effect = effect;
  report.frame = frame;
  report.config = cfg;
  report.scenarios.resize(static_cast<std::size_t>(e_max) + 1);

  auto run_scenario = [&](int e) {
    std::vector<double> samples(static_cast<std::size_t>(n_runs));
    std::vector<int> indices;
    for (int run = 0; run < n_runs; ++run) {
      // Score stream is independent of e: common random numbers across
      // scenarios; placement/flip stream is scenario-specific.
      Rng score_rng(derive_seed(seed, streams::kScores, static_cast<std::uint64_t>(run)));
      Rng error_rng(derive_seed(seed, streams::kErrors, static_cast<std::uint64_t>(e),
                                static_cast<std::uint64_t>(run)));
      indices.clear();
      if (e > 0) indices = error_rng.sample_without_replacement(2, cfg.n_trials, e);
      samples[static_cast<std::size_t>(run)] =
          simulate_run(frame, cfg, indices, effect, mode, score_rng, error_rng);
    }
    report.scenarios[static_cast<std::size_t>(e)] = summarize(e, samples);
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1 || e_max == 0) {
    for (int e = 0; e <= e_max; ++e) run_scenario(e);
  } else {
    // Scenario slots are preallocated; completion order cannot matter.
    std::vector<std::future<void>> tasks;
    tasks.reserve(static_cast<std::size_t>(e_max) + 1);
    for (int e = 0; e <= e_max; ++e)
      tasks.push_back(std::async(std::launch::async, run_scenario, e));
    for (auto& t : tasks) t.get();
  }

  report.baseline_mu = report.scenarios[0].mu;
  report.baseline_sigma = report.scenarios[0].sigma;
  for (auto& s : report.scenarios) s.deviation = std::fabs(report.baseline_mu - s.mu);
  return report;
}

nlohmann::json BootstrapReport::to_json() const {
  nlohmann::json scenario_arr = nlohmann::json::array();
  for (const auto& s : scenarios)
    scenario_arr.push_back({{"e", s.e},
                            {"mu", s.mu},
                            {"sigma", s.sigma},
                            {"deviation", s.deviation},
                            {"histogram",
                             {{"bin_width", kHistogramBin},
                              {"origin", s.histogram_origin},
                              {"counts", s.histogram}}}});
  const nlohmann::json cfg_json = config_to_json(config);
  return {{"schema", kSimulationSchema},
          {"software_version", kVersion},
          {"seed", seed},
          {"n_runs", n_runs},
          {"e_max", e_max},
          {"config", cfg_json},
          {"config_hash", fnv1a_hex(cfg_json.dump())},
          {"effect",
           {{"mode", to_string(mode)},
            {"counts",
             {{effect.counts.counts[0][0], effect.counts.counts[0][1]},
              {effect.counts.counts[1][0], effect.counts.counts[1][1]}}},
            {"joint",
             {{"affecting_given_correct", effect.p_affect_correct},
              {"affecting_given_incorrect", effect.p_affect_incorrect},
              {"not_affecting_given_correct", effect.p_keep_correct},
              {"not_affecting_given_incorrect", effect.p_keep_incorrect}}},
            {"conditional",
             {{"flip_given_correct", effect.flip_given_correct},
              {"flip_given_incorrect", effect.flip_given_incorrect}}}}},
          {"frame", frame_to_json(frame)},
          {"baseline", {{"mu", baseline_mu}, {"sigma", baseline_sigma}}},
          {"scenarios", scenario_arr}};
}

std::string BootstrapReport::histograms_csv() const {
  std::ostringstream out;
  out << "e,bin_lo,bin_hi,count\n";
  for (const auto& s : scenarios)
    for (std::size_t b = 0; b < s.histogram.size(); ++b) {
      const double lo = s.histogram_origin + static_cast<double>(b) * kHistogramBin;
      out << s.e << "," << lo << "," << lo + kHistogramBin << "," << s.histogram[b]
          << "\n";
    }
  return out.str();
}

} // namespace din::sim
