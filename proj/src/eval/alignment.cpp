#include "din/eval/alignment.hpp"

#include <algorithm>

namespace din::eval {

AlignmentResult align_digits(const std::vector<int>& ref, const std::vector<int>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // dp[i][j] = edit distance between ref[0..i) and hyp[0..j)
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) dp[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) dp[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const int diag = dp[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      dp[i][j] = std::min({diag, dp[i - 1][j] + 1, dp[i][j - 1] + 1});
    }

  AlignmentResult out;
  out.deletions_by_ref_pos.assign(n, 0);
  out.substitutions_by_ref_pos.assign(n, 0);

  // Backtrace, tie preference: match/substitution > deletion > insertion.
  std::size_t i = n, j = m;
  std::vector<AlignedOp> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        dp[i][j] == dp[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      AlignedOp op;
      op.ref_digit = ref[i - 1];
      op.hyp_digit = hyp[j - 1];
      op.ref_index = static_cast<int>(i - 1);
      if (ref[i - 1] == hyp[j - 1]) {
        op.op = EditOp::kMatch;
      } else {
        op.op = EditOp::kSubstitution;
        ++out.substitutions;
        ++out.substitutions_by_ref_pos[i - 1];
      }
      rev.push_back(op);
      --i;
      --j;
    } else if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
      rev.push_back({EditOp::kDeletion, ref[i - 1], -1, static_cast<int>(i - 1)});
      ++out.deletions;
      ++out.deletions_by_ref_pos[i - 1];
      --i;
    } else {
      rev.push_back({EditOp::kInsertion, -1, hyp[j - 1], -1});
      ++out.insertions;
      --j;
    }
  }
  out.ops.assign(rev.rbegin(), rev.rend());
  return out;
}

} // namespace din::eval
