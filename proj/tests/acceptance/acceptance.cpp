// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
// Usage: din_acceptance --din /path/to/din

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "din/asr/backend.hpp"
#include "din/audio/resample.hpp"
#include "din/audio/synth.hpp"
#include "din/audio/third_octave.hpp"
#include "din/audio/wav_io.hpp"
#include "din/core/result_json.hpp"
#include "din/core/session.hpp"
#include "din/eval/alignment.hpp"
#include "din/eval/metrics.hpp"
#include "din/sim/bootstrap.hpp"
#include "din/sim/frame.hpp"
#include "din/sim/listener.hpp"

using namespace din;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what
            << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Spearman rank correlation, average ranks on ties.
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size(), 0.0);
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(rx.size());
  my /= static_cast<double>(ry.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

SessionResult run_mock_session(const std::string& list_id, const sim::LogisticListener& l,
                               std::uint64_t seed) {
  asr::MockToneBackend backend;
  NullSink sink;
  auto listener = SimulatedListener::logistic(l, seed);
  SessionIO io;
  io.manifest = audio::StimulusManifest::synthetic_default();
  io.backend = &backend;
  io.sink = &sink;
  io.responder = listener.get();
  return run_session(builtin_list(list_id), StaircaseConfig{}, io, seed);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool schema_valid_result(const nlohmann::json& j) {
  for (const char* key : {"schema", "software_version", "list_id", "seed", "config",
                          "config_hash", "trials", "first_trial_repeats", "final_snr",
                          "srt_mean", "srt_sd", "started_utc", "finished_utc"})
    if (!j.contains(key)) return false;
  if (j.at("schema") != "din-result/1") return false;
  for (const auto& t : j.at("trials"))
    for (const char* key : {"trial", "snr", "presented", "raw_transcript", "digits", "correct"})
      if (!t.contains(key)) return false;
  return true;
}

// --- criteria ---------------------------------------------------------------

void criterion_1_staircase_oracle() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;

  // all-correct listener through the full session machinery
  const TripletList& list = builtin_list("1");
  std::deque<std::vector<std::string>> script;
  for (const auto& t : list.triplets)
    script.push_back({asr::DigitLexicon::canonical_word(t.d1()),
                      asr::DigitLexicon::canonical_word(t.d2()),
                      asr::DigitLexicon::canonical_word(t.d3())});
  asr::ScriptedBackend backend(script);
  NullSink sink;
  auto listener = SimulatedListener::echo(7);
  SessionIO io;
  io.manifest = audio::StimulusManifest::synthetic_default();
  io.backend = &backend;
  io.sink = &sink;
  io.responder = listener.get();
  const SessionResult all_correct = run_session(list, StaircaseConfig{}, io, 7);
  if (all_correct.srt_mean != -453.0 / 21.0) {
    ok = false;
    detail << " all-correct srt_mean=" << all_correct.srt_mean;
  }

  // alternating listener: correct trial 1, then incorrect/correct alternating
  StaircaseConfig cfg;
  StaircaseState st = StaircaseState::initial(cfg);
  std::vector<double> hist;
  hist.push_back(next_snr(st, true, cfg));
  bool correct = false;
  for (int j = 2; j <= 24; ++j) {
    hist.push_back(next_snr(st, correct, cfg));
    correct = !correct;
  }
  const double alternating = compute_srt(hist, cfg).first;
  if (alternating != -125.0 / 21.0) {
    ok = false;
    detail << " alternating=" << alternating;
  }

  const double dt = seconds_since(t0);
  if (dt >= 1.0) {
    ok = false;
    detail << " runtime=" << dt << "s (budget 1 s)";
  }
  std::ostringstream what;
  what << "staircase oracles: all-correct = -453/21, alternating = -125/21 ("
       << dt << " s)" << detail.str();
  report(1, ok, what.str());
}

void criterion_2_effect_model() {
  const auto m = eval::ErrorEffectModel::table1();
  const double joints[4] = {m.p_affect_correct, m.p_affect_incorrect, m.p_keep_correct,
                            m.p_keep_incorrect};
  const double exact[4] = {0.625, 0.0125, 0.125, 0.2375};
  const double rounded[4] = {0.625, 0.013, 0.125, 0.238};
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    if (joints[i] != exact[i]) ok = false;
    if (std::fabs(std::round(joints[i] * 1000.0) / 1000.0 - rounded[i]) > 1e-12) ok = false;
  }
  std::ostringstream what;
  what << "effect model joints (" << joints[0] << ", " << joints[1] << ", " << joints[2]
       << ", " << joints[3] << ") match the published values at 3 decimals";
  report(2, ok, what.str());
}

void criterion_3_alignment() {
  Rng rng(20240817);
  auto random_digits = [&](int max_len) {
    std::vector<int> v;
    const int len = rng.uniform_int(0, max_len);
    for (int i = 0; i < len; ++i) v.push_back(rng.uniform_int(0, 9));
    return v;
  };
  auto oracle = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = static_cast<int>(i);
      for (std::size_t j = 1; j <= b.size(); ++j)
        cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), prev[j] + 1,
                           cur[j - 1] + 1});
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };

  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto ref = random_digits(6);
    const auto hyp = random_digits(6);
    if (eval::align_digits(ref, hyp).total_errors() == oracle(ref, hyp)) ++agree;
  }

  std::vector<eval::AnnotatedResponse> corpus;
  for (int i = 0; i < 12; ++i)
    corpus.push_back({DigitTriplet{1, 2, 3}, {1, 2, 3}, {}});
  for (int i = 0; i < 13; ++i)
    corpus.push_back({DigitTriplet{4, 5, 6}, {4, 5, 6}, {4, 5, 6}});
  const double wer = eval::compute_wer(corpus);

  const bool ok = agree == 1000 && wer == 48.0;
  std::ostringstream what;
  what << "alignment oracle " << agree << "/1000 exact; 36-deletion corpus WER = " << wer
       << "%";
  report(3, ok, what.str());
}

// Shared state between criteria 4 and 5 (same setup per the spec).
struct BootstrapSetup {
  SessionResult session;
  sim::SamplingFrame frame;
  sim::BootstrapReport report;
};

BootstrapSetup g_bootstrap_setup;

void criterion_4_baseline_fidelity() {
  const auto t0 = Clock::now();
  const sim::LogisticListener listener{-7.3, 0.2, 0.0};
  g_bootstrap_setup.session = run_mock_session("1", listener, 20250810);
  g_bootstrap_setup.frame = sim::build_frame(g_bootstrap_setup.session);
  // Joint mode: the published equation values drive the flips directly,
  // reproducing the published trend figures (see the report's "mode" field).
  g_bootstrap_setup.report =
      sim::bootstrap(g_bootstrap_setup.frame, StaircaseConfig{},
                     eval::ErrorEffectModel::table1(), 10000, 23, 20250810,
                     sim::EffectMode::kJoint);
  const double dt = seconds_since(t0);
  const double deviation =
      std::fabs(g_bootstrap_setup.report.baseline_mu - g_bootstrap_setup.session.srt_mean);
  const bool ok = deviation <= 0.3 && dt < 30.0;
  std::ostringstream what;
  what << "baseline fidelity: session srt_mean = " << g_bootstrap_setup.session.srt_mean
       << ", mu_sim = " << g_bootstrap_setup.report.baseline_mu << ", |diff| = " << deviation
       << " dB <= 0.3 (" << dt << " s)";
  report(4, ok, what.str());
}

void criterion_5_injection_trend() {
  const auto& rep = g_bootstrap_setup.report;
  std::vector<double> es, mus, sigmas;
  for (const auto& s : rep.scenarios) {
    es.push_back(s.e);
    mus.push_back(s.mu);
    sigmas.push_back(s.sigma);
  }
  const double rho_mu = spearman(es, mus);
  const double rho_sigma = spearman(es, sigmas);
  const double dev4 = rep.scenarios[4].deviation;
  const double dev0 = rep.scenarios[0].deviation;
  const bool ok = rho_mu >= 0.9 && rho_sigma >= 0.9 && dev4 <= 0.8 && dev0 <= 0.1;
  std::ostringstream what;
  what << "injection trend: Spearman(mu, e) = " << rho_mu << ", Spearman(sigma, e) = "
       << rho_sigma << " (>= 0.9); deviation e=4: " << dev4 << " dB <= 0.8, e=0: " << dev0
       << " <= 0.1";
  report(5, ok, what.str());
}

void criterion_6_degenerate_identity() {
  const auto& frame = g_bootstrap_setup.frame;
  StaircaseConfig cfg;
  const auto degenerate = eval::ErrorEffectModel::degenerate();
  bool ok = true;
  for (int e = 0; e <= 23 && ok; ++e) {
    for (int run = 0; run < 200 && ok; ++run) {
      Rng score_base(derive_seed(77, streams::kScores, static_cast<std::uint64_t>(run)));
      Rng err_base(derive_seed(77, streams::kErrors, 0, static_cast<std::uint64_t>(run)));
      const double baseline = sim::simulate_run(frame, cfg, {}, degenerate,
                                                sim::EffectMode::kConditional, score_base,
                                                err_base);
      Rng score(derive_seed(77, streams::kScores, static_cast<std::uint64_t>(run)));
      Rng err(derive_seed(77, streams::kErrors, static_cast<std::uint64_t>(e),
                          static_cast<std::uint64_t>(run)));
      std::vector<int> indices;
      if (e > 0) indices = err.sample_without_replacement(2, cfg.n_trials, e);
      const double srt = sim::simulate_run(frame, cfg, indices, degenerate,
                                           sim::EffectMode::kConditional, score, err);
      if (srt != baseline) ok = false;
    }
  }
  report(6, ok,
         "degenerate effect: per-run SRTs identical to no-error runs under common random "
         "numbers for e = 0..23");
}

void criterion_7_hermetic_sessions() {
  const sim::LogisticListener listener{-7.3, 0.2, 0.0};
  bool ok = true;
  double lo = 1e9, hi = -1e9;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SessionResult r = run_mock_session("1", listener, seed);
    if (r.trials.size() != 24) ok = false;
    if (!schema_valid_result(session_to_json(r))) ok = false;
    if (std::fabs(r.srt_mean - (-7.3)) > 2.5) ok = false;
    lo = std::min(lo, r.srt_mean);
    hi = std::max(hi, r.srt_mean);
  }
  std::ostringstream what;
  what << "hermetic sessions: 20 seeds, 24 trials each, schema-valid, srt_mean in ["
       << lo << ", " << hi << "] within -7.3 +/- 2.5 dB";
  report(7, ok, what.str());
}

void criterion_8_dsp() {
  bool ok = true;
  std::ostringstream detail;

  auto sine = [](double freq, double amp, double seconds, int rate) {
    audio::Waveform w;
    w.sample_rate = rate;
    const auto n = static_cast<std::size_t>(seconds * rate);
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      w.samples[i] = static_cast<float>(
          amp * std::sin(2.0 * M_PI * freq * static_cast<double>(i) / rate));
    return w;
  };
  auto rms_mid = [](const std::vector<float>& v, std::size_t trim) {
    double ss = 0.0;
    for (std::size_t i = trim; i < v.size() - trim; ++i)
      ss += static_cast<double>(v[i]) * v[i];
    return std::sqrt(ss / static_cast<double>(v.size() - 2 * trim));
  };

  // resampler sweep
  for (double f : {100.0, 1000.0, 3000.0, 5000.0, 6400.0}) {
    const auto in = sine(f, 0.5, 1.0, 40000);
    const auto out = audio::resample_40k_to_16k(in);
    const double gain_db =
        20.0 * std::log10(rms_mid(out.samples, 200) / rms_mid(in.samples, 500));
    if (std::fabs(gain_db) > 0.1) {
      ok = false;
      detail << " passband " << f << "Hz gain " << gain_db << "dB;";
    }
  }
  for (double f : {8500.0, 10000.0, 14000.0}) {
    const auto in = sine(f, 0.5, 1.0, 40000);
    const auto out = audio::resample_40k_to_16k(in);
    const double att = rms_mid(out.samples, 200) / rms_mid(in.samples, 500);
    if (att > 1e-3) {
      ok = false;
      detail << " stopband " << f << "Hz att " << 20.0 * std::log10(att) << "dB;";
    }
  }

  // third-octave white-noise slope
  std::vector<double> mean_power;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(derive_seed(888, 9, seed));
    audio::Waveform w;
    w.sample_rate = 16000;
    w.samples.resize(16000 * 16);
    for (auto& v : w.samples) v = static_cast<float>(rng.gaussian(0.0, 0.1));
    const auto res = audio::third_octave_levels(w);
    if (mean_power.empty()) mean_power.assign(res.bands.size(), 0.0);
    for (std::size_t i = 0; i < res.bands.size(); ++i)
      mean_power[i] += res.bands[i].power / 10.0;
  }
  double slope_sum = 0.0;
  for (std::size_t i = 1; i < mean_power.size(); ++i)
    slope_sum += 10.0 * std::log10(mean_power[i] / mean_power[i - 1]);
  const double slope = slope_sum / static_cast<double>(mean_power.size() - 1);
  if (std::fabs(slope - 1.0) > 0.3) {
    ok = false;
    detail << " white-noise slope " << slope << " dB/band;";
  }

  // WAV round trip
  const auto tone = sine(440.0, 0.7, 1.0, 16000);
  const auto path = (std::filesystem::temp_directory_path() / "din_acc_roundtrip.wav").string();
  audio::wav_write(path, tone);
  const auto back = audio::wav_read(path);
  float max_dev = 0.0f;
  for (std::size_t i = 0; i < tone.samples.size(); ++i)
    max_dev = std::max(max_dev, std::fabs(tone.samples[i] - back.samples[i]));
  std::filesystem::remove(path);
  if (max_dev > 1.0f / 32768.0f) {
    ok = false;
    detail << " wav max dev " << max_dev << ";";
  }

  std::ostringstream what;
  what << "DSP: passband flat +/-0.1 dB, stopband <= -60 dB, third-octave slope = " << slope
       << " dB/band (+/-0.3), WAV round trip <= 1 LSB" << detail.str();
  report(8, ok, what.str());
}

void criterion_9_cli_determinism(const std::string& din) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "din-acceptance";
  fs::create_directories(dir);
  const std::string env = "cd " + dir.string() + " && SOURCE_DATE_EPOCH=1700000000 ";
  bool ok = true;
  std::ostringstream detail;

  auto sh = [&](const std::string& cmd) {
    const int rc = std::system((env + cmd + " > /dev/null 2>&1").c_str());
    return rc == 0;
  };
  auto same = [&](const std::string& a, const std::string& b) {
    return slurp((dir / a).string()) == slurp((dir / b).string()) &&
           !slurp((dir / a).string()).empty();
  };

  // run
  if (!sh(din + " run --list 1 --asr mock-tone --listener logistic:-7.3,0.2 --seed 7 --out r1.json"))
    ok = false;
  if (!sh(din + " run --list 1 --asr mock-tone --listener logistic:-7.3,0.2 --seed 7 --out r2.json"))
    ok = false;
  if (!same("r1.json", "r2.json")) {
    ok = false;
    detail << " run artifacts differ;";
  }

  // simulate, serial vs parallel
  if (!sh(din + " simulate --from-session r1.json --runs 2000 --errors 0..23 --seed 1 "
                "--threads 1 --out s1.json --csv h1.csv"))
    ok = false;
  if (!sh(din + " simulate --from-session r1.json --runs 2000 --errors 0..23 --seed 1 "
                "--threads 8 --out s2.json --csv h2.csv"))
    ok = false;
  if (!same("s1.json", "s2.json") || !same("h1.csv", "h2.csv")) {
    ok = false;
    detail << " simulate artifacts differ;";
  }

  // stim synth + calibrate
  if (!sh(din + " stim synth --triplet 5,2,8 --snr -5 --seed 3 --out w1.wav")) ok = false;
  if (!sh(din + " stim synth --triplet 5,2,8 --snr -5 --seed 3 --out w2.wav")) ok = false;
  if (!same("w1.wav", "w2.wav")) {
    ok = false;
    detail << " synth wavs differ;";
  }
  if (!sh(din + " calibrate --wav w1.wav --out b1.csv")) ok = false;
  if (!sh(din + " calibrate --wav w1.wav --out b2.csv")) ok = false;
  if (!same("b1.csv", "b2.csv")) {
    ok = false;
    detail << " calibrate outputs differ;";
  }

  // evaluate
  {
    std::ofstream ann(dir / "ann.csv");
    ann << "session_id,trial_index,presented,spoken,decoded\n";
    ann << "p1,1,528,528,1528\np1,2,349,349,349\np2,1,207,207,207\n";
  }
  if (!sh(din + " evaluate --annotations ann.csv --out e1.json")) ok = false;
  if (!sh(din + " evaluate --annotations ann.csv --out e2.json")) ok = false;
  if (!same("e1.json", "e2.json")) {
    ok = false;
    detail << " evaluate reports differ;";
  }

  // schema of the CLI result artifact
  try {
    const auto j = nlohmann::json::parse(slurp((dir / "r1.json").string()));
    if (!schema_valid_result(j)) {
      ok = false;
      detail << " result schema invalid;";
    }
  } catch (...) {
    ok = false;
    detail << " result not parseable;";
  }

  // exit codes
  {
    const int rc_cfg =
        std::system((env + din + " run --list 99 --out x.json > /dev/null 2>&1").c_str());
    if (WEXITSTATUS(rc_cfg) != 2) {
      ok = false;
      detail << " bad-list exit " << WEXITSTATUS(rc_cfg) << " != 2;";
    }
    const int rc_asr = std::system(
        (env + din +
         " run --list 1 --asr-cmd '/nonexistent/decoder {wav}' --seed 1 --out x.json"
         " > /dev/null 2>&1")
            .c_str());
    if (WEXITSTATUS(rc_asr) != 3) {
      ok = false;
      detail << " dead-asr exit " << WEXITSTATUS(rc_asr) << " != 3;";
    }
    const int rc_e = std::system(
        (env + din + " simulate --from-session r1.json --errors 24 --out x.json"
                     " > /dev/null 2>&1")
            .c_str());
    if (WEXITSTATUS(rc_e) != 2) {
      ok = false;
      detail << " errors=24 exit " << WEXITSTATUS(rc_e) << " != 2;";
    }
    const int rc_runs = std::system(
        (env + din + " simulate --from-session r1.json --runs 0 --out x.json"
                     " > /dev/null 2>&1")
            .c_str());
    if (WEXITSTATUS(rc_runs) != 2) {
      ok = false;
      detail << " runs=0 exit " << WEXITSTATUS(rc_runs) << " != 2;";
    }
  }

  std::error_code ec;
  fs::remove_all(dir, ec);
  report(9, ok, "CLI determinism + exit codes: byte-identical artifacts across repeats and "
                "thread counts" + detail.str());
}

} // namespace

int main(int argc, char** argv) {
  std::string din_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--din") din_path = argv[i + 1];
  if (!din_path.empty()) {
    std::error_code ec;
    const auto abs = std::filesystem::absolute(din_path, ec);
    if (!ec) din_path = abs.string(); // commands below cd into a scratch dir
  }

  criterion_1_staircase_oracle();
  criterion_2_effect_model();
  criterion_3_alignment();
  criterion_4_baseline_fidelity();
  criterion_5_injection_trend();
  criterion_6_degenerate_identity();
  criterion_7_hermetic_sessions();
  criterion_8_dsp();
  if (din_path.empty()) {
    report(9, false, "CLI determinism (no --din binary path given)");
  } else {
    criterion_9_cli_determinism(din_path);
  }

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ") << (g_failures == 0 ? "" : std::to_string(g_failures))
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
