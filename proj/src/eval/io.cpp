#include "din/eval/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "din/core/result_json.hpp"
#include "din/core/staircase.hpp"
#include "din/version.hpp"

namespace din::eval {

std::vector<int> parse_digit_string(const std::string& s) {
  std::vector<int> out;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      out.push_back(c - '0');
    } else if (c == ' ' || c == ',' || c == '-' || c == ';' || c == '\t') {
      continue;
    } else {
      throw ConfigError(std::string("invalid digit string '") + s + "'");
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

DigitTriplet parse_triplet(const std::string& s) {
  const auto digits = parse_digit_string(s);
  if (digits.size() != 3)
    throw ConfigError("presented triplet '" + s + "' must contain exactly 3 digits");
  return {digits[0], digits[1], digits[2]};
}

std::vector<AnnotationRow> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + " is empty");

  std::map<std::string, std::size_t> col;
  {
    std::stringstream ss(line);
    std::string field;
    std::size_t idx = 0;
    while (std::getline(ss, field, ',')) col[trim(field)] = idx++;
  }
  for (const char* required : {"session_id", "trial_index", "presented", "spoken", "decoded"})
    if (col.find(required) == col.end())
      throw ConfigError(path + " is missing column '" + required + "'");

  std::vector<AnnotationRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    // a trailing empty field ("...,,") is dropped by getline; restore it
    while (fields.size() < col.size()) fields.emplace_back();
    auto get = [&](const char* name) -> const std::string& {
      return fields.at(col.at(name));
    };
    try {
      AnnotationRow row;
      row.session_id = get("session_id");
      row.trial_index = std::stoi(get("trial_index"));
      row.response.presented = parse_triplet(get("presented"));
      row.response.spoken = parse_digit_string(get("spoken"));
      row.response.decoded = parse_digit_string(get("decoded"));
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<AnnotationRow> load_json_rows(const std::string& path) {
  const nlohmann::json j = load_json(path);
  if (!j.is_array()) throw ConfigError(path + " must be a JSON array of annotations");
  std::vector<AnnotationRow> rows;
  for (const auto& item : j) {
    AnnotationRow row;
    row.session_id = item.at("session_id").get<std::string>();
    row.trial_index = item.value("trial_index", 0);
    row.response.presented = parse_triplet(item.at("presented").get<std::string>());
    row.response.spoken = parse_digit_string(item.at("spoken").get<std::string>());
    row.response.decoded = parse_digit_string(item.at("decoded").get<std::string>());
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

std::vector<AnnotationRow> load_annotations(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  std::vector<AnnotationRow> rows;
  if (ends_with(".json")) {
    rows = load_json_rows(path);
  } else if (ends_with(".csv")) {
    rows = load_csv(path);
  } else {
    std::ifstream probe(path);
    if (!probe) throw ConfigError("cannot open " + path);
    char c = 0;
    probe >> c;
    rows = (c == '[') ? load_json_rows(path) : load_csv(path);
  }
  if (rows.empty()) throw ConfigError(path + " contains no annotations");
  return rows;
}

namespace {

nlohmann::json tally3(const std::vector<int>& by_pos) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < 3; ++i)
    arr.push_back(i < by_pos.size() ? by_pos[i] : 0);
  return arr;
}

} // namespace

nlohmann::json evaluation_report(const std::vector<AnnotationRow>& rows, MatchPolicy policy,
                                 const std::optional<GroupSpec>& groups) {
  // participants in first-seen order
  std::vector<std::string> order;
  std::map<std::string, std::vector<const AnnotationRow*>> by_participant;
  for (const auto& row : rows) {
    if (by_participant.find(row.session_id) == by_participant.end())
      order.push_back(row.session_id);
    by_participant[row.session_id].push_back(&row);
  }

  EffectCounts pooled_effect;
  long long pooled_errors = 0;
  long long pooled_reference = 0;
  std::map<std::string, double> wer_by_participant;

  nlohmann::json participants = nlohmann::json::array();
  for (const auto& id : order) {
    const auto& prows = by_participant[id];
    long long ins = 0, del = 0, sub = 0, reference = 0;
    std::vector<int> del_pos(3, 0), sub_pos(3, 0);
    std::array<long long, 5> cases{}; // [0]=no-error, 1..4
    for (const auto* row : prows) {
      const auto& r = row->response;
      const AlignmentResult a = align_digits(r.spoken, r.decoded);
      ins += a.insertions;
      del += a.deletions;
      sub += a.substitutions;
      reference += static_cast<long long>(r.spoken.size());
      for (std::size_t i = 0; i < a.deletions_by_ref_pos.size() && i < 3; ++i) {
        del_pos[i] += a.deletions_by_ref_pos[i];
        sub_pos[i] += a.substitutions_by_ref_pos[i];
      }
      const ErrorCase c = classify_case(r, policy);
      cases[static_cast<std::size_t>(c)] += 1;
      if (c != ErrorCase::kNoError) {
        const bool spoken_ok = score_response(r.presented, r.spoken, policy);
        const bool scored_ok = score_response(r.presented, r.decoded, policy);
        pooled_effect.counts[scored_ok ? 0 : 1][spoken_ok ? 0 : 1] += 1;
      }
    }
    if (reference == 0)
      throw EmptyReference("participant '" + id + "' has no annotated spoken digits");
    const double wer = 100.0 * static_cast<double>(ins + del + sub) /
                       static_cast<double>(reference);
    wer_by_participant[id] = wer;
    pooled_errors += ins + del + sub;
    pooled_reference += reference;

    participants.push_back(
        {{"session_id", id},
         {"n_triplets", prows.size()},
         {"wer_percent", wer},
         {"insertions", ins},
         {"deletions", del},
         {"substitutions", sub},
         {"reference_digits", reference},
         {"deletions_by_position", tally3(del_pos)},
         {"substitutions_by_position", tally3(sub_pos)},
         {"cases",
          {{"no_error", cases[0]},
           {"case1", cases[1]},
           {"case2", cases[2]},
           {"case3", cases[3]},
           {"case4", cases[4]}}}});
  }

  nlohmann::json report{
      {"schema", kEvaluationSchema},
      {"software_version", kVersion},
      {"seed", 0}, // evaluation is deterministic; recorded for uniformity
      {"match_policy", to_string(policy)},
      {"config_hash", fnv1a_hex(to_string(policy))},
      {"participants", participants},
      {"pooled",
       {{"errors", pooled_errors},
        {"reference_digits", pooled_reference},
        {"wer_percent", pooled_reference > 0
                            ? 100.0 * static_cast<double>(pooled_errors) /
                                  static_cast<double>(pooled_reference)
                            : 0.0}}}};

  if (pooled_effect.total() > 0) {
    const ErrorEffectModel m = effect_model(pooled_effect);
    report["effect_model"] = {
        {"counts",
         {{m.counts.counts[0][0], m.counts.counts[0][1]},
          {m.counts.counts[1][0], m.counts.counts[1][1]}}},
        {"joint",
         {{"affecting_given_correct", m.p_affect_correct},
          {"affecting_given_incorrect", m.p_affect_incorrect},
          {"not_affecting_given_correct", m.p_keep_correct},
          {"not_affecting_given_incorrect", m.p_keep_incorrect}}},
        {"conditional",
         {{"flip_given_correct", m.flip_given_correct},
          {"flip_given_incorrect", m.flip_given_incorrect}}}};
  }

  if (groups.has_value()) {
    auto collect = [&](const std::vector<std::string>& ids) {
      std::vector<double> wers;
      for (const auto& id : ids) {
        auto it = wer_by_participant.find(id);
        if (it == wer_by_participant.end())
          throw ConfigError("group references unknown session '" + id + "'");
        wers.push_back(it->second);
      }
      return wers;
    };
    const WelchResult w = welch_t(collect(groups->group_a), collect(groups->group_b));
    report["welch"] = {{"t", w.t}, {"df", w.df}, {"p", w.p}};
  }
  return report;
}

} // namespace din::eval
