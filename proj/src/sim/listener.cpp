#include "din/sim/listener.hpp"

#include <cmath>

namespace din::sim {

double LogisticListener::p_correct(double snr_db) const {
  return (1.0 - lapse) /
         (1.0 + std::exp(-4.0 * slope_per_db * (snr_db - midpoint_db)));
}

bool logistic_listener_respond(const LogisticListener& listener, double snr_db, Rng& rng) {
  return rng.bernoulli(listener.p_correct(snr_db));
}

} // namespace din::sim
