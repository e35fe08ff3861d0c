#include "din/sim/frame.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "din/version.hpp"

namespace din::sim {

void SamplingFrame::validate() const {
  if (entries.empty()) throw IncompleteSession("sampling frame has no entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.n_presented < 1 || e.n_correct < 0 || e.n_correct > e.n_presented)
      throw IncompleteSession("sampling frame entry has inconsistent counts");
    if (i > 0 && !(entries[i - 1].snr < e.snr))
      throw IncompleteSession("sampling frame entries must be sorted by SNR");
  }
}

SamplingFrame build_frame(const SessionResult& session) {
  if (session.trials.empty() ||
      static_cast<int>(session.trials.size()) != session.config.n_trials)
    throw IncompleteSession("session has " + std::to_string(session.trials.size()) +
                            " scored trials, config wants " +
                            std::to_string(session.config.n_trials));
  if (session.trials.front().trial_index != 1 || !session.trials.front().scored_correct)
    throw IncompleteSession("session lacks a correctly scored first triplet");

  std::map<double, FrameEntry> tally;
  auto add = [&](double snr, bool correct) {
    auto& e = tally[snr];
    e.snr = snr;
    e.n_presented += 1;
    if (correct) e.n_correct += 1;
  };
  for (const auto& t : session.trials) add(t.snr, t.scored_correct);
  for (const auto& t : session.first_trial_repeats) add(t.snr, t.scored_correct);

  SamplingFrame frame;
  frame.source_session = session.list_id;
  frame.first_correct_snr = session.trials.front().snr;
  frame.entries.reserve(tally.size());
  for (const auto& [snr, e] : tally) frame.entries.push_back(e);
  frame.validate();
  return frame;
}

double lookup_p(const SamplingFrame& frame, double snr) {
  frame.validate();
  const auto& es = frame.entries;
  auto it = std::lower_bound(es.begin(), es.end(), snr,
                             [](const FrameEntry& e, double v) { return e.snr < v; });
  if (it != es.end() && it->snr == snr) return it->p();
  if (it == es.begin()) return it->p();
  if (it == es.end()) return (it - 1)->p();
  const double d_hi = it->snr - snr;
  const double d_lo = snr - (it - 1)->snr;
  // tie -> lower SNR
  return d_lo <= d_hi ? (it - 1)->p() : it->p();
}

nlohmann::json frame_to_json(const SamplingFrame& frame) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : frame.entries)
    entries.push_back({{"snr", e.snr},
                       {"n_presented", e.n_presented},
                       {"n_correct", e.n_correct},
                       {"p_correct", e.p()}});
  return {{"schema", kFrameSchema},
          {"source_session", frame.source_session},
          {"first_correct_snr", frame.first_correct_snr},
          {"entries", entries}};
}

SamplingFrame frame_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != kFrameSchema)
    throw ConfigError("expected schema '" + std::string(kFrameSchema) + "'");
  SamplingFrame frame;
  frame.source_session = j.value("source_session", "");
  frame.first_correct_snr = j.at("first_correct_snr").get<double>();
  for (const auto& e : j.at("entries")) {
    FrameEntry fe;
    fe.snr = e.at("snr").get<double>();
    fe.n_presented = e.at("n_presented").get<long long>();
    fe.n_correct = e.at("n_correct").get<long long>();
    frame.entries.push_back(fe);
  }
  std::sort(frame.entries.begin(), frame.entries.end(),
            [](const FrameEntry& a, const FrameEntry& b) { return a.snr < b.snr; });
  frame.validate();
  return frame;
}

} // namespace din::sim
