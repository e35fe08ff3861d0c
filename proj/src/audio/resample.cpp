#include "din/audio/resample.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "din/kernels/kernels.hpp"

namespace din::audio {

namespace {

constexpr int kUp = 2;
constexpr int kDown = 5;
constexpr int kTaps = 221;              // odd -> linear phase
constexpr int kDelay = (kTaps - 1) / 2; // group delay at the 80 kHz rate
constexpr double kCutoff = 7200.0 / 80000.0; // between 6.4 and 8 kHz edges
constexpr double kKaiserBeta = 6.7553;       // ~70 dB design

double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  const double half_sq = 0.25 * x * x;
  for (int k = 1; k < 64; ++k) {
    term *= half_sq / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

struct PolyphaseFilter {
  // Branch r holds taps h[2u + r] reversed, so each output is one forward
  // dot product against a contiguous input slice.
  std::array<std::vector<float>, kUp> branch_rev;

  PolyphaseFilter() {
    std::vector<double> h(kTaps);
    const double i0_beta = bessel_i0(kKaiserBeta);
    for (int i = 0; i < kTaps; ++i) {
      const double t = static_cast<double>(i - kDelay);
      const double x = 2.0 * kCutoff * t;
      const double sinc = t == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
      const double frac = t / kDelay;
      const double win = bessel_i0(kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) / i0_beta;
      h[static_cast<std::size_t>(i)] = 2.0 * kCutoff * sinc * win;
    }
    for (int r = 0; r < kUp; ++r) {
      std::vector<double> taps;
      for (int i = r; i < kTaps; i += kUp) taps.push_back(h[static_cast<std::size_t>(i)]);
      // Exact unit DC gain per phase (the x2 zero-stuffing compensation is
      // folded in by normalizing each branch to 1 instead of 1/L).
      double sum = 0.0;
      for (double v : taps) sum += v;
      auto& rev = branch_rev[static_cast<std::size_t>(r)];
      rev.resize(taps.size());
      for (std::size_t u = 0; u < taps.size(); ++u)
        rev[taps.size() - 1 - u] = static_cast<float>(taps[u] / sum);
    }
  }
};

const PolyphaseFilter& filter() {
  static const PolyphaseFilter f;
  return f;
}

} // namespace

Waveform resample_40k_to_16k(const Waveform& w) {
  if (w.sample_rate != 40000)
    throw WrongSampleRate("resample_40k_to_16k expects 40 kHz input, got " +
                          std::to_string(w.sample_rate));
  const std::size_t n = w.samples.size();
  Waveform out;
  out.sample_rate = 16000;
  if (n == 0) return out;

  const auto& pf = filter();
  const std::size_t max_len =
      std::max(pf.branch_rev[0].size(), pf.branch_rev[1].size());
  const std::size_t pad = max_len + static_cast<std::size_t>(kDelay);

  // Edge replication keeps DC exact across the whole output.
  std::vector<float> x(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) x[i] = w.samples.front();
  for (std::size_t i = 0; i < n; ++i) x[pad + i] = w.samples[i];
  for (std::size_t i = 0; i < pad; ++i) x[pad + n + i] = w.samples.back();

  const std::size_t out_len = (2 * n + kDown - 1) / kDown; // ceil(2n/5)
  out.samples.resize(out_len);
  for (std::size_t m = 0; m < out_len; ++m) {
    const long long t = static_cast<long long>(kDown) * static_cast<long long>(m) + kDelay;
    const int r = static_cast<int>(t % kUp);
    const auto& taps = pf.branch_rev[static_cast<std::size_t>(r)];
    const long long q = (t - r) / kUp; // last input index touched
    const long long start = q - static_cast<long long>(taps.size()) + 1 +
                            static_cast<long long>(pad);
    out.samples[m] = static_cast<float>(
        kernels::dot(x.data() + start, taps.data(), taps.size()));
  }
  return out;
}

} // namespace din::audio
