#pragma once

#include <vector>

#include "din/errors.hpp"

namespace din::eval {

enum class EditOp { kMatch, kSubstitution, kDeletion, kInsertion };

struct AlignedOp {
  EditOp op;
  int ref_digit = -1; // -1 for insertions
  int hyp_digit = -1; // -1 for deletions
  int ref_index = -1; // 0-based position in the reference, -1 for insertions
};

struct AlignmentResult {
  int insertions = 0;
  int deletions = 0;
  int substitutions = 0;
  std::vector<AlignedOp> ops;
  // Indexed by reference position; sizes equal the reference length.
  std::vector<int> deletions_by_ref_pos;
  std::vector<int> substitutions_by_ref_pos;

  int total_errors() const { return insertions + deletions + substitutions; }
};

// Minimal-edit (Levenshtein, unit costs) alignment of hyp against ref.
// Ties during backtrace prefer substitution over deletion over insertion,
// so per-position tallies are deterministic even when the optimum is not
// unique.
AlignmentResult align_digits(const std::vector<int>& ref, const std::vector<int>& hyp);

} // namespace din::eval
