#include "din/eval/metrics.hpp"

#include <cmath>

#include "din/core/staircase.hpp"

namespace din::eval {

double compute_wer(const std::vector<AnnotatedResponse>& responses) {
  long long errors = 0;
  long long reference = 0;
  for (const auto& r : responses) {
    errors += align_digits(r.spoken, r.decoded).total_errors();
    reference += static_cast<long long>(r.spoken.size());
  }
  if (reference == 0)
    throw EmptyReference("WER undefined: no annotated spoken digits");
  return 100.0 * static_cast<double>(errors) / static_cast<double>(reference);
}

ErrorCase classify_case(const AnnotatedResponse& r, MatchPolicy policy) {
  if (r.decoded == r.spoken) return ErrorCase::kNoError;
  const bool spoken_matches = score_response(r.presented, r.spoken, policy);
  const bool scored_correct = score_response(r.presented, r.decoded, policy);
  if (spoken_matches && !scored_correct) return ErrorCase::kCase1;
  if (!spoken_matches && scored_correct) return ErrorCase::kCase2;
  if (spoken_matches && scored_correct) return ErrorCase::kCase3;
  return ErrorCase::kCase4;
}

ErrorEffectModel ErrorEffectModel::table1() {
  EffectCounts c;
  c.counts[0][0] = 10;
  c.counts[0][1] = 1;
  c.counts[1][0] = 50;
  c.counts[1][1] = 19;
  return effect_model(c);
}

ErrorEffectModel effect_model(const EffectCounts& counts) {
  const long long total = counts.total();
  if (total <= 0) throw EmptyModel("effect model needs at least one counted triplet");
  for (const auto& row : counts.counts)
    for (long long v : row)
      if (v < 0) throw EmptyModel("effect model counts must be non-negative");

  ErrorEffectModel m;
  m.counts = counts;
  const auto tot = static_cast<double>(total);
  m.p_keep_correct = static_cast<double>(counts.counts[0][0]) / tot;
  m.p_affect_incorrect = static_cast<double>(counts.counts[0][1]) / tot;
  m.p_affect_correct = static_cast<double>(counts.counts[1][0]) / tot;
  m.p_keep_incorrect = static_cast<double>(counts.counts[1][1]) / tot;

  const long long col_correct = counts.counts[0][0] + counts.counts[1][0];
  const long long col_incorrect = counts.counts[0][1] + counts.counts[1][1];
  m.flip_given_correct =
      col_correct > 0 ? static_cast<double>(counts.counts[1][0]) / static_cast<double>(col_correct)
                      : 0.0;
  m.flip_given_incorrect =
      col_incorrect > 0
          ? static_cast<double>(counts.counts[0][1]) / static_cast<double>(col_incorrect)
          : 0.0;
  return m;
}

namespace {

// Continued fraction for the regularized incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

WelchResult welch_t(const std::vector<double>& group_a, const std::vector<double>& group_b) {
  auto moments = [](const std::vector<double>& g) {
    if (g.size() < 2) throw DegenerateGroup("each group needs at least 2 values");
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(g.size());
    double ss = 0.0;
    for (double v : g) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(g.size() - 1);
    return std::pair<double, double>{mean, var};
  };
  const auto [ma, va] = moments(group_a);
  const auto [mb, vb] = moments(group_b);
  if (va <= 0.0 || vb <= 0.0)
    throw DegenerateGroup("groups must have nonzero variance");

  const auto na = static_cast<double>(group_a.size());
  const auto nb = static_cast<double>(group_b.size());
  const double sa = va / na;
  const double sb = vb / nb;
  WelchResult r;
  r.t = (ma - mb) / std::sqrt(sa + sb);
  r.df = (sa + sb) * (sa + sb) /
         (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  // two-sided p from the Student-t CDF
  r.p = regularized_incomplete_beta(r.df / 2.0, 0.5, r.df / (r.df + r.t * r.t));
  return r;
}

} // namespace din::eval
