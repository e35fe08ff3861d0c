#include "din/core/result_json.hpp"

#include <fstream>

#include "din/version.hpp"

namespace din {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json config_to_json(const StaircaseConfig& cfg) {
  return nlohmann::json{{"start_snr", cfg.start_snr},
                        {"first_step_up", cfg.first_step_up},
                        {"step", cfg.step},
                        {"noise_level", cfg.noise_level},
                        {"speech_level_min", cfg.speech_level_min},
                        {"speech_level_max", cfg.speech_level_max},
                        {"n_trials", cfg.n_trials},
                        {"srt_window_start", cfg.srt_window_start},
                        {"max_first_trial_presentations", cfg.max_first_trial_presentations},
                        {"match_policy", to_string(cfg.match_policy)}};
}

StaircaseConfig config_from_json(const nlohmann::json& j) {
  StaircaseConfig cfg;
  cfg.start_snr = j.value("start_snr", cfg.start_snr);
  cfg.first_step_up = j.value("first_step_up", cfg.first_step_up);
  cfg.step = j.value("step", cfg.step);
  cfg.noise_level = j.value("noise_level", cfg.noise_level);
  cfg.speech_level_min = j.value("speech_level_min", cfg.speech_level_min);
  cfg.speech_level_max = j.value("speech_level_max", cfg.speech_level_max);
  cfg.n_trials = j.value("n_trials", cfg.n_trials);
  cfg.srt_window_start = j.value("srt_window_start", cfg.srt_window_start);
  cfg.max_first_trial_presentations =
      j.value("max_first_trial_presentations", cfg.max_first_trial_presentations);
  if (j.contains("match_policy"))
    cfg.match_policy = match_policy_from_string(j.at("match_policy").get<std::string>());
  cfg.validate();
  return cfg;
}

namespace {

nlohmann::json trial_to_json(const TrialRecord& t) {
  return nlohmann::json{{"trial", t.trial_index},
                        {"presentation_count", t.presentation_count},
                        {"snr", t.snr},
                        {"presented", t.presented},
                        {"raw_transcript", t.raw_transcript},
                        {"digits", t.digit_sequence},
                        {"correct", t.scored_correct}};
}

TrialRecord trial_from_json(const nlohmann::json& j) {
  TrialRecord t;
  t.trial_index = j.at("trial").get<int>();
  t.presentation_count = j.value("presentation_count", 1);
  t.snr = j.at("snr").get<double>();
  const auto presented = j.at("presented").get<std::vector<int>>();
  if (presented.size() != 3) throw ConfigError("trial 'presented' must hold 3 digits");
  std::copy(presented.begin(), presented.end(), t.presented.begin());
  if (j.contains("raw_transcript"))
    t.raw_transcript = j.at("raw_transcript").get<std::vector<std::string>>();
  if (j.contains("digits")) t.digit_sequence = j.at("digits").get<std::vector<int>>();
  t.scored_correct = j.at("correct").get<bool>();
  return t;
}

} // namespace

nlohmann::json session_to_json(const SessionResult& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials) trials.push_back(trial_to_json(t));
  nlohmann::json repeats = nlohmann::json::array();
  for (const auto& t : r.first_trial_repeats) repeats.push_back(trial_to_json(t));

  nlohmann::json cfg = config_to_json(r.config);
  cfg["asr"] = r.asr_desc;
  cfg["listener"] = r.listener_desc;

  return nlohmann::json{{"schema", kResultSchema},
                        {"software_version", kVersion},
                        {"list_id", r.list_id},
                        {"seed", r.seed},
                        {"seeded", r.seeded},
                        {"started_utc", r.started_utc},
                        {"finished_utc", r.finished_utc},
                        {"config", cfg},
                        {"config_hash", fnv1a_hex(cfg.dump())},
                        {"trials", trials},
                        {"first_trial_repeats", repeats},
                        {"final_snr", r.final_snr},
                        {"srt_mean", r.srt_mean},
                        {"srt_sd", r.srt_sd}};
}

SessionResult session_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != kResultSchema)
    throw ConfigError("expected schema '" + std::string(kResultSchema) + "', got '" +
                      j.value("schema", "<missing>") + "'");
  SessionResult r;
  r.list_id = j.value("list_id", "");
  r.seed = j.value("seed", std::uint64_t{0});
  r.seeded = j.value("seeded", false);
  r.started_utc = j.value("started_utc", "");
  r.finished_utc = j.value("finished_utc", "");
  if (j.contains("config")) {
    r.config = config_from_json(j.at("config"));
    r.asr_desc = j.at("config").value("asr", "");
    r.listener_desc = j.at("config").value("listener", "");
  }
  for (const auto& t : j.at("trials")) r.trials.push_back(trial_from_json(t));
  if (j.contains("first_trial_repeats"))
    for (const auto& t : j.at("first_trial_repeats"))
      r.first_trial_repeats.push_back(trial_from_json(t));
  r.final_snr = j.at("final_snr").get<double>();
  r.srt_mean = j.at("srt_mean").get<double>();
  r.srt_sd = j.at("srt_sd").get<double>();
  return r;
}

void save_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw Error("short write to " + path);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + " is not valid JSON: " + e.what());
  }
}

} // namespace din
