#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "din/kernels/kernels.hpp"
#include "din/rng.hpp"

using din::kernels::Backend;

namespace {

std::vector<float> random_buffer(std::size_t n, std::uint64_t seed) {
  din::Rng rng(seed);
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

// Lengths around the 8-lane boundary plus a long one.
const std::size_t kLengths[] = {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 64, 1000, 4099};

} // namespace

TEST_CASE("scalar kernels match a plain reference") {
  const auto a = random_buffer(257, 11);
  const auto b = random_buffer(257, 22);
  double ss = 0.0, dp = 0.0;
  float peak = 0.0f;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ss += static_cast<double>(a[i]) * a[i];
    dp += static_cast<double>(a[i]) * b[i];
    peak = std::max(peak, std::fabs(a[i]));
  }
  CHECK(din::kernels::scalar::sum_squares(a.data(), a.size()) == doctest::Approx(ss).epsilon(1e-14));
  CHECK(din::kernels::scalar::dot(a.data(), b.data(), a.size()) == doctest::Approx(dp).epsilon(1e-14));
  CHECK(din::kernels::scalar::peak_abs(a.data(), a.size()) == peak);
}

#if defined(DIN_HAVE_AVX2)
TEST_CASE("avx2 variants are equivalent to the scalar reference") {
  if (!din::kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this CPU; skipping");
    return;
  }
  for (std::size_t n : kLengths) {
    const auto a = random_buffer(n, 100 + n);
    const auto b = random_buffer(n, 200 + n);

    std::vector<float> out_s(n), out_v(n);
    din::kernels::scalar::scale(out_s.data(), a.data(), n, 0.37f);
    din::kernels::avx2::scale(out_v.data(), a.data(), n, 0.37f);
    CHECK(out_s == out_v);

    din::kernels::scalar::multiply(out_s.data(), a.data(), b.data(), n);
    din::kernels::avx2::multiply(out_v.data(), a.data(), b.data(), n);
    CHECK(out_s == out_v);

    din::kernels::scalar::mix(out_s.data(), a.data(), 0.8f, b.data(), -0.4f, n);
    din::kernels::avx2::mix(out_v.data(), a.data(), 0.8f, b.data(), -0.4f, n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(out_v[i] == doctest::Approx(out_s[i]).epsilon(1e-6));

    const double ss_s = din::kernels::scalar::sum_squares(a.data(), n);
    const double ss_v = din::kernels::avx2::sum_squares(a.data(), n);
    CHECK(ss_v == doctest::Approx(ss_s).epsilon(1e-12));

    const double dp_s = din::kernels::scalar::dot(a.data(), b.data(), n);
    const double dp_v = din::kernels::avx2::dot(a.data(), b.data(), n);
    CHECK(dp_v == doctest::Approx(dp_s).epsilon(1e-11));
    if (dp_s == 0.0) CHECK(dp_v == 0.0);

    CHECK(din::kernels::scalar::peak_abs(a.data(), n) ==
          din::kernels::avx2::peak_abs(a.data(), n));
  }
}
#endif

TEST_CASE("dispatch honors forced backends") {
  const auto a = random_buffer(1000, 5);
  din::kernels::force_backend(Backend::kScalar);
  CHECK(din::kernels::active_backend() == "scalar");
  const double scalar_ss = din::kernels::sum_squares(a.data(), a.size());
  CHECK(scalar_ss == din::kernels::scalar::sum_squares(a.data(), a.size()));

  if (din::kernels::avx2_available()) {
    din::kernels::force_backend(Backend::kAvx2);
    CHECK(din::kernels::active_backend() == "avx2");
    const double vec_ss = din::kernels::sum_squares(a.data(), a.size());
    CHECK(vec_ss == doctest::Approx(scalar_ss).epsilon(1e-12));
  }
  din::kernels::force_backend(Backend::kAuto);
}

TEST_CASE("empty buffers are safe") {
  CHECK(din::kernels::sum_squares(nullptr, 0) == 0.0);
  CHECK(din::kernels::dot(nullptr, nullptr, 0) == 0.0);
  CHECK(din::kernels::peak_abs(nullptr, 0) == 0.0f);
}
