#pragma once

#include "din/errors.hpp"
#include "din/rng.hpp"

namespace din::sim {

// Parametric psychometric function standing in for a participant. slope is
// probability per dB at the midpoint, so
//   p(snr) = (1 - lapse) / (1 + exp(-4 * slope * (snr - midpoint))).
struct LogisticListener {
  double midpoint_db = -7.3;
  double slope_per_db = 0.2;
  double lapse = 0.0;

  void validate() const {
    if (slope_per_db <= 0.0) throw ConfigError("listener slope must be positive");
    if (lapse < 0.0 || lapse > 0.1) throw ConfigError("listener lapse must be in [0, 0.1]");
  }

  double p_correct(double snr_db) const;
};

bool logistic_listener_respond(const LogisticListener& listener, double snr_db, Rng& rng);

} // namespace din::sim
