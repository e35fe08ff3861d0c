#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "din/eval/metrics.hpp"

namespace din::eval {

struct AnnotationRow {
  std::string session_id;
  int trial_index = 0;
  AnnotatedResponse response{};
};

// "528", "5 2 8", "5,2,8" and "5-2-8" all parse to (5,2,8); empty is empty.
std::vector<int> parse_digit_string(const std::string& s);

// CSV (header: session_id,trial_index,presented,spoken,decoded) or a JSON
// array of objects with the same keys. Format chosen by file extension,
// falling back to content sniffing.
std::vector<AnnotationRow> load_annotations(const std::string& path);

struct GroupSpec {
  std::vector<std::string> group_a;
  std::vector<std::string> group_b;
};

// din-evaluation/1 document: per-participant WER + I/D/S + per-position
// tallies + case taxonomy, pooled totals, the Table-1 style effect model
// over error triplets, and optionally a Welch t-test between group WERs.
nlohmann::json evaluation_report(const std::vector<AnnotationRow>& rows, MatchPolicy policy,
                                 const std::optional<GroupSpec>& groups);

} // namespace din::eval
