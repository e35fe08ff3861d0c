#include "din/audio/waveform.hpp"

#include <algorithm>
#include <cmath>

#include "din/kernels/kernels.hpp"

namespace din::audio {

double rms(const Waveform& w, std::size_t begin, std::size_t end) {
  end = std::min(end, w.samples.size());
  if (begin >= end) return 0.0;
  const std::size_t n = end - begin;
  return std::sqrt(kernels::sum_squares(w.samples.data() + begin, n) /
                   static_cast<double>(n));
}

double rms(const Waveform& w) { return rms(w, 0, w.samples.size()); }

} // namespace din::audio
