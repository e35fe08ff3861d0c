// din: digits-in-noise test runner, offline evaluation, bootstrap simulation
// and stimulus utilities. One command per process; exit codes: 0 success,
// 2 configuration error, 3 session failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "din/asr/backend.hpp"
#include "din/audio/synth.hpp"
#include "din/audio/third_octave.hpp"
#include "din/audio/wav_io.hpp"
#include "din/core/result_json.hpp"
#include "din/core/session.hpp"
#include "din/eval/io.hpp"
#include "din/sim/bootstrap.hpp"
#include "din/sim/listener.hpp"
#include "din/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSession = 3;

din::TripletList load_list(const std::string& list_id, const std::string& list_file) {
  if (!list_file.empty()) {
    const nlohmann::json j = din::load_json(list_file);
    std::vector<din::DigitTriplet> ts;
    for (const auto& t : j.at("triplets")) {
      const auto digits = t.get<std::vector<int>>();
      if (digits.size() != 3)
        throw din::ConfigError("each triplet needs 3 digits in " + list_file);
      ts.emplace_back(digits[0], digits[1], digits[2]);
    }
    return din::TripletList::checked(j.value("list_id", list_file), std::move(ts));
  }
  return din::builtin_list(list_id);
}

std::unique_ptr<din::ResponseSource> make_listener(const std::string& spec,
                                                   std::uint64_t seed) {
  if (spec == "echo") return din::SimulatedListener::echo(seed);
  const std::string prefix = "logistic:";
  if (spec.rfind(prefix, 0) == 0) {
    std::stringstream ss(spec.substr(prefix.size()));
    din::sim::LogisticListener l;
    char comma = 0;
    if (!(ss >> l.midpoint_db)) throw din::ConfigError("bad listener spec '" + spec + "'");
    if (!(ss >> comma >> l.slope_per_db) || comma != ',')
      throw din::ConfigError("bad listener spec '" + spec + "'");
    if (ss >> comma) {
      if (comma != ',' || !(ss >> l.lapse))
        throw din::ConfigError("bad listener spec '" + spec + "'");
    }
    return din::SimulatedListener::logistic(l, seed);
  }
  throw din::ConfigError("unknown listener '" + spec +
                         "' (expected echo or logistic:midpoint,slope[,lapse])");
}

din::DigitTriplet parse_triplet_arg(const std::string& s) {
  const auto digits = din::eval::parse_digit_string(s);
  if (digits.size() != 3)
    throw din::ConfigError("--triplet needs exactly 3 digits, e.g. 5,2,8");
  return {digits[0], digits[1], digits[2]};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw din::Error("cannot write " + path);
  out << text;
  if (!out) throw din::Error("short write to " + path);
}

struct StaircaseFlags {
  double start_snr = -5.0;
  double noise_level = 65.0;
  double speech_min = 42.0;
  double speech_max = 75.0;
  double step = 2.0;
  double first_step_up = 4.0;
  int max_first = 10;
  std::string match_policy = "contiguous";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--start-snr", start_snr, "Starting SNR in dB");
    cmd->add_option("--noise-level", noise_level, "Fixed noise level, dB SPL");
    cmd->add_option("--speech-min", speech_min, "Lower speech level bound, dB SPL");
    cmd->add_option("--speech-max", speech_max, "Upper speech level bound, dB SPL");
    cmd->add_option("--step", step, "Staircase step, dB");
    cmd->add_option("--first-step-up", first_step_up, "First-triplet retry step, dB");
    cmd->add_option("--max-first-presentations", max_first,
                    "Abort after this many incorrect first-triplet presentations");
    cmd->add_option("--match-policy", match_policy, "exact|contiguous");
  }

  din::StaircaseConfig to_config() const {
    din::StaircaseConfig cfg;
    cfg.start_snr = start_snr;
    cfg.noise_level = noise_level;
    cfg.speech_level_min = speech_min;
    cfg.speech_level_max = speech_max;
    cfg.step = step;
    cfg.first_step_up = first_step_up;
    cfg.max_first_trial_presentations = max_first;
    cfg.match_policy = din::match_policy_from_string(match_policy);
    cfg.validate();
    return cfg;
  }
};

int parse_error_range(const std::string& spec, int e_limit) {
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw din::ConfigError("bad --errors value '" + spec + "'");
    }
    if (used != s.size()) throw din::ConfigError("bad --errors value '" + spec + "'");
    return v;
  };
  int e_max = 0;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_int(spec.substr(0, dots));
    e_max = parse_int(spec.substr(dots + 2));
    if (lo != 0)
      throw din::ConfigError("--errors range must start at 0 (baseline is always run)");
  } else {
    e_max = parse_int(spec);
  }
  if (e_max < 0 || e_max > e_limit)
    throw din::ConfigError("--errors must lie in 0.." + std::to_string(e_limit) +
                           " (only trials 2.." + std::to_string(e_limit + 1) +
                           " are eligible)");
  return e_max;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automated digits-in-noise test with ASR-backed scoring"};
  app.set_version_flag("--version", std::string("din ") + din::kVersion);
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run one adaptive DIN session");
  std::string run_list = "1", run_list_file, run_asr = "mock-tone", run_asr_cmd;
  std::string run_listener = "echo", run_out = "din-result.json", run_manifest;
  double run_asr_timeout = 30.0;
  std::uint64_t run_seed = 0;
  bool run_quiet = false;
  StaircaseFlags run_flags;
  run->add_option("--list", run_list, "Built-in list id (1..10)");
  run->add_option("--list-file", run_list_file, "Triplet list JSON (overrides --list)");
  auto* asr_opt = run->add_option("--asr", run_asr, "mock-tone");
  auto* asr_cmd_opt =
      run->add_option("--asr-cmd", run_asr_cmd,
                      "External decoder command template containing {wav}");
  asr_opt->excludes(asr_cmd_opt);
  run->add_option("--asr-timeout", run_asr_timeout, "External decoder timeout, seconds");
  run->add_option("--listener", run_listener, "echo | logistic:midpoint,slope[,lapse]");
  run->add_option("--seed", run_seed, "Session seed (recorded in the result)");
  run->add_option("--out", run_out, "Result JSON path");
  run->add_option("--manifest", run_manifest, "Stimulus manifest JSON (default synthetic)");
  run->add_flag("--quiet", run_quiet, "Suppress the summary line");
  run_flags.add_to(run);

  // --- evaluate ------------------------------------------------------------
  auto* evaluate = app.add_subcommand("evaluate", "Offline decoder evaluation");
  std::string eval_annotations, eval_out = "din-evaluation.json";
  std::string eval_policy = "contiguous", eval_group_a, eval_group_b;
  evaluate->add_option("--annotations", eval_annotations, "CSV or JSON annotations")
      ->required();
  evaluate->add_option("--out", eval_out, "Report JSON path");
  evaluate->add_option("--match-policy", eval_policy, "exact|contiguous");
  evaluate->add_option("--group-a", eval_group_a, "Comma-separated session ids");
  evaluate->add_option("--group-b", eval_group_b, "Comma-separated session ids");

  // --- simulate ------------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Bootstrap error-injection simulation");
  std::string sim_frame, sim_session, sim_out = "din-simulation.json", sim_csv;
  std::string sim_errors = "0..23", sim_effect_counts = "10,1,50,19";
  std::string sim_effect_mode = "conditional";
  int sim_runs = 10000, sim_threads = 0;
  std::uint64_t sim_seed = 0;
  auto* frame_opt = simulate->add_option("--frame", sim_frame, "Sampling frame JSON");
  auto* session_opt =
      simulate->add_option("--from-session", sim_session, "Build the frame from a result JSON");
  frame_opt->excludes(session_opt);
  simulate->add_option("--runs", sim_runs, "Simulations per scenario");
  simulate->add_option("--errors", sim_errors, "Error-count range, e.g. 0..23 or 4");
  simulate->add_option("--seed", sim_seed, "Simulation seed");
  simulate->add_option("--out", sim_out, "Report JSON path");
  simulate->add_option("--csv", sim_csv, "Histogram CSV path");
  simulate->add_option("--effect-counts", sim_effect_counts,
                       "2x2 counts a,b,c,d = [[a,b],[c,d]] (Table-1 layout)");
  simulate->add_option("--effect-mode", sim_effect_mode, "conditional|joint");
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = hardware)");

  // --- stim ------------------------------------------------------------
  auto* stim = app.add_subcommand("stim", "Stimulus utilities");
  stim->require_subcommand(1);
  auto* synth = stim->add_subcommand("synth", "Synthesize one triplet-in-noise WAV");
  std::string synth_triplet_arg = "5,2,8", synth_out = "triplet.wav", synth_manifest;
  double synth_snr = -5.0;
  std::uint64_t synth_seed = 0;
  synth->add_option("--triplet", synth_triplet_arg, "Three digits, e.g. 5,2,8");
  synth->add_option("--snr", synth_snr, "Speech-to-noise ratio, dB");
  synth->add_option("--seed", synth_seed, "Jitter/noise seed");
  synth->add_option("--out", synth_out, "Output WAV path");
  synth->add_option("--manifest", synth_manifest, "Stimulus manifest JSON");

  // --- calibrate -----------------------------------------------------------
  auto* calibrate = app.add_subcommand("calibrate", "Third-octave band levels of a WAV");
  std::string cal_wav, cal_out = "bands.csv";
  calibrate->add_option("--wav", cal_wav, "Input WAV")->required();
  calibrate->add_option("--out", cal_out, "Band CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      const din::TripletList list = load_list(run_list, run_list_file);
      const din::StaircaseConfig cfg = run_flags.to_config();

      std::unique_ptr<din::asr::AsrBackend> backend;
      if (!run_asr_cmd.empty()) {
        din::asr::AsrBackendSpec spec;
        spec.kind = din::asr::AsrBackendSpec::Kind::kExternalProcess;
        spec.command_template = run_asr_cmd;
        spec.timeout_s = run_asr_timeout;
        backend = std::make_unique<din::asr::ExternalBackend>(spec);
      } else if (run_asr == "mock-tone") {
        backend = std::make_unique<din::asr::MockToneBackend>();
      } else {
        throw din::ConfigError("unknown --asr '" + run_asr + "' (use mock-tone or --asr-cmd)");
      }
      auto listener = make_listener(run_listener, run_seed);

      din::SessionIO io;
      io.manifest = run_manifest.empty() ? din::audio::StimulusManifest::synthetic_default()
                                         : din::audio::StimulusManifest::load(run_manifest);
      din::NullSink sink;
      io.backend = backend.get();
      io.sink = &sink;
      io.responder = listener.get();

      din::SessionResult partial;
      try {
        const din::SessionResult result = din::run_session(list, cfg, io, run_seed, &partial);
        din::save_json(run_out, din::session_to_json(result));
        if (!run_quiet) {
          std::cout << "list " << result.list_id << "  srt_mean " << result.srt_mean
                    << " dB SNR  srt_sd " << result.srt_sd << " dB  (" << result.trials.size()
                    << " trials, " << result.first_trial_repeats.size()
                    << " first-triplet repeats)\n";
        }
      } catch (const din::Error& e) {
        // FirstTripletFailure, AsrUnavailable, AsrTimeout, AudioDeviceError:
        // persist whatever was recorded before giving up.
        din::save_json(run_out, din::session_to_json(partial));
        std::cerr << "session failed: " << e.what() << " (partial log in " << run_out
                  << ")\n";
        return kExitSession;
      }
      return kExitOk;
    }

    if (*evaluate) {
      const auto rows = din::eval::load_annotations(eval_annotations);
      std::optional<din::eval::GroupSpec> groups;
      if (!eval_group_a.empty() || !eval_group_b.empty()) {
        if (eval_group_a.empty() || eval_group_b.empty())
          throw din::ConfigError("--group-a and --group-b must be given together");
        din::eval::GroupSpec g;
        auto split = [](const std::string& s) {
          std::vector<std::string> out;
          std::stringstream ss(s);
          std::string item;
          while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(item);
          }
          return out;
        };
        g.group_a = split(eval_group_a);
        g.group_b = split(eval_group_b);
        groups = g;
      }
      const auto report = din::eval::evaluation_report(
          rows, din::match_policy_from_string(eval_policy), groups);
      din::save_json(eval_out, report);
      std::cout << "pooled WER " << report.at("pooled").at("wer_percent").get<double>()
                << "% over " << report.at("participants").size() << " participant(s)\n";
      return kExitOk;
    }

    if (*simulate) {
      din::sim::SamplingFrame frame;
      if (!sim_session.empty()) {
        frame = din::sim::build_frame(din::session_from_json(din::load_json(sim_session)));
      } else if (!sim_frame.empty()) {
        frame = din::sim::frame_from_json(din::load_json(sim_frame));
      } else {
        throw din::ConfigError("simulate needs --frame or --from-session");
      }
      if (sim_runs < 1) throw din::ConfigError("--runs must be >= 1");

      din::StaircaseConfig cfg; // defaults; frames carry no config of their own
      const int e_max = parse_error_range(sim_errors, cfg.n_trials - 1);

      din::eval::EffectCounts counts;
      {
        std::stringstream ss(sim_effect_counts);
        long long a = 0, b = 0, c = 0, d = 0;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(ss >> a >> c1 >> b >> c2 >> c >> c3 >> d) || c1 != ',' || c2 != ',' || c3 != ',')
          throw din::ConfigError("--effect-counts expects a,b,c,d");
        counts.counts[0][0] = a;
        counts.counts[0][1] = b;
        counts.counts[1][0] = c;
        counts.counts[1][1] = d;
      }
      const auto effect = din::eval::effect_model(counts);
      din::sim::EffectMode mode;
      if (sim_effect_mode == "conditional") {
        mode = din::sim::EffectMode::kConditional;
      } else if (sim_effect_mode == "joint") {
        mode = din::sim::EffectMode::kJoint;
      } else {
        throw din::ConfigError("--effect-mode must be conditional or joint");
      }

      const auto report = din::sim::bootstrap(frame, cfg, effect, sim_runs, e_max, sim_seed,
                                              mode, sim_threads);
      din::save_json(sim_out, report.to_json());
      if (!sim_csv.empty()) write_text(sim_csv, report.histograms_csv());
      std::cout << "baseline mu " << report.baseline_mu << " dB  sigma "
                << report.baseline_sigma << " dB over " << report.n_runs << " runs; e up to "
                << report.e_max << "\n";
      return kExitOk;
    }

    if (*synth) {
      const din::DigitTriplet triplet = parse_triplet_arg(synth_triplet_arg);
      const auto manifest = synth_manifest.empty()
                                ? din::audio::StimulusManifest::synthetic_default()
                                : din::audio::StimulusManifest::load(synth_manifest);
      din::Rng rng(din::derive_seed(synth_seed, din::streams::kStimuli));
      const auto result = din::audio::synth_triplet(triplet, manifest, synth_snr, rng);
      din::audio::wav_write(synth_out, result.mix);
      std::cout << "wrote " << synth_out << " (" << result.mix.duration_s() << " s, snr "
                << synth_snr << " dB)\n";
      return kExitOk;
    }

    if (*calibrate) {
      const auto w = din::audio::wav_read(cal_wav);
      const auto result = din::audio::third_octave_levels(w);
      std::ostringstream csv;
      csv << "nominal_hz,center_hz,level_db\n";
      for (const auto& band : result.bands)
        csv << band.nominal_hz << "," << band.center_hz << "," << band.level_db << "\n";
      write_text(cal_out, csv.str());
      std::cout << "wrote " << cal_out << " (" << result.bands.size() << " bands)\n";
      return kExitOk;
    }
  } catch (const din::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const din::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSession;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
