#include "shipland/kalman.hpp"

#include <cmath>

#include "shipland/error.hpp"

namespace shipland {

KalmanState make_kalman(double q, double r) {
  if (!(q > 0.0) || !(r > 0.0)) throw Error(ErrorCode::ConfigInvalid, "Kalman noise terms must be positive");
  KalmanState s;
  s.q = q;
  s.r = r;
  s.p = r;
  return s;
}

KalmanState kalman_update(const KalmanState& state, double cm, bool literal_form) {
  KalmanState s = state;
  if (!s.initialized) {
    s.ce = cm;
    s.p = s.r;
    s.initialized = true;
    return s;
  }
  s.pre = s.p + s.q;
  s.kg = s.pre / (s.pre + s.r);
  s.ce = literal_form ? s.ce + s.kg * cm : s.ce + s.kg * (cm - s.ce);
  s.p = (1.0 - s.kg) * s.pre;
  return s;
}

KalmanSteadyState kalman_steady_state(double q, double r) {
  // Predicted covariance X solves X^2 - qX - qr = 0.
  const double x = 0.5 * (q + std::sqrt(q * q + 4.0 * q * r));
  return {x / (x + r), x * r / (x + r)};
}

}  // namespace shipland
