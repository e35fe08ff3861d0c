#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace din {

// SplitMix64 (Steele, Lea & Flood 2014). Pure 64-bit integer arithmetic,
// so sequences are bit-identical across platforms and standard libraries —
// unlike std:: distributions. All randomness in this project flows through
// this generator; sub-streams are derived with mix64 so independent work
// items (bootstrap runs, stimuli) can be seeded without sharing state.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform integer in [0, n). Multiply-shift map (Lemire); the residual
  // bias of < 2^-57 for the tiny ranges used here is irrelevant.
  std::uint64_t uniform_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  int uniform_int(int lo, int hi) { // inclusive range
    return lo + static_cast<int>(uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // Box-Muller; consumes exactly two draws per sample.
  double gaussian(double mean, double sd) {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586 * u2);
  }

  // k distinct values from {lo..hi}, partial Fisher-Yates, order discarded.
  std::vector<int> sample_without_replacement(int lo, int hi, int k) {
    std::vector<int> pool;
    pool.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int v = lo; v <= hi; ++v) pool.push_back(v);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const auto j = static_cast<std::size_t>(i) +
                     static_cast<std::size_t>(uniform_below(pool.size() - static_cast<std::size_t>(i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return out;
  }

private:
  std::uint64_t state_;
};

// SplitMix64 finalizer as a standalone mixing function.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic sub-seed for a named stream and up to two indices.
// Distinct (stream, a, b) tuples map to well-separated seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t s = mix64(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
  s = mix64(s ^ (0xE7037ED1A0B428DBULL * (a + 1)));
  s = mix64(s ^ (0x8EBC6AF09C88C6E3ULL * (b + 1)));
  return s;
}

// Stream tags used across the project.
namespace streams {
inline constexpr std::uint64_t kScores = 1;   // per-run spoken-correctness draws
inline constexpr std::uint64_t kErrors = 2;   // error placement + flip decisions
inline constexpr std::uint64_t kStimuli = 3;  // jitter + noise synthesis
inline constexpr std::uint64_t kListener = 4; // simulated participant
inline constexpr std::uint64_t kLists = 5;    // built-in triplet lists
} // namespace streams

} // namespace din
