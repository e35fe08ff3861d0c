#pragma once

#include <array>
#include <vector>

#include "din/core/types.hpp"
#include "din/eval/alignment.hpp"

namespace din::eval {

struct AnnotatedResponse {
  DigitTriplet presented{0, 1, 2};
  std::vector<int> spoken;  // manual annotation, the reference
  std::vector<int> decoded; // ASR digit-only transcript
};

// WER = 100 * sum(I+D+S) / sum(|spoken|), pooled across the responses of a
// participant (reference = annotated spoken digits).
double compute_wer(const std::vector<AnnotatedResponse>& responses);

// The four decoding-error cases; kNoError when decoded == spoken.
// 1: spoken matches presented but scored incorrect
// 2: spoken mismatches presented but scored correct
// 3: spoken matches, transcript has insertions, still scored correct
// 4: spoken mismatches, transcript differs from spoken, also scored incorrect
enum class ErrorCase { kNoError = 0, kCase1 = 1, kCase2 = 2, kCase3 = 3, kCase4 = 4 };

ErrorCase classify_case(const AnnotatedResponse& r, MatchPolicy policy);

// Table-1 style 2x2: rows = automatically scored correct/incorrect,
// columns = spoken response correct/incorrect.
struct EffectCounts {
  // counts[scored][spoken]; index 0 = correct, 1 = incorrect
  std::array<std::array<long long, 2>, 2> counts{};
  long long total() const {
    return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
  }
};

struct ErrorEffectModel {
  EffectCounts counts;
  // Joint cell probabilities in the order of Eqs. 1-4:
  // affecting|correct-spoken, affecting|incorrect-spoken,
  // not-affecting|correct-spoken, not-affecting|incorrect-spoken.
  double p_affect_correct = 0.0;   // scored incorrect & spoken correct
  double p_affect_incorrect = 0.0; // scored correct & spoken incorrect
  double p_keep_correct = 0.0;     // scored correct & spoken correct
  double p_keep_incorrect = 0.0;   // scored incorrect & spoken incorrect
  // Row-conditional flip probabilities given the spoken correctness.
  double flip_given_correct = 0.0;   // P(score flipped | spoken correct)
  double flip_given_incorrect = 0.0; // P(score flipped | spoken incorrect)

  double flip_probability(bool spoken_correct) const {
    return spoken_correct ? flip_given_correct : flip_given_incorrect;
  }

  static ErrorEffectModel degenerate() { return ErrorEffectModel{}; } // never flips
  // The paper's published confusion matrix: [[10,1],[50,19]].
  static ErrorEffectModel table1();
};

ErrorEffectModel effect_model(const EffectCounts& counts);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0; // two-sided
};

// Welch's t with Welch-Satterthwaite df; p from the Student-t CDF via the
// regularized incomplete beta function (abs tolerance 1e-6).
WelchResult welch_t(const std::vector<double>& group_a, const std::vector<double>& group_b);

// Exposed for oracle tests.
double regularized_incomplete_beta(double a, double b, double x);

} // namespace din::eval
