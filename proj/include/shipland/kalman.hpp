#pragma once

namespace shipland {

/// Single-state filter for a slowly varying quantity (relative yaw).
struct KalmanState {
  double ce = 0.0;   // current estimate
  double p = 0.05;   // error covariance
  double q = 0.005;  // process noise
  double r = 0.05;   // measurement noise
  double kg = 0.0;   // last gain
  double pre = 0.0;  // last predicted covariance
  bool initialized = false;
};

KalmanState make_kalman(double q = 0.005, double r = 0.05);

/// Predict with a random-walk model, then correct with measurement `cm`.
/// The first measurement of an uninitialised filter seeds the estimate with
/// P = R. `literal_form` replaces the correction by CE = CE + KG * CM.
KalmanState kalman_update(const KalmanState& state, double cm, bool literal_form = false);

/// Fixed point of the covariance recursion: {gain, covariance}.
struct KalmanSteadyState {
  double gain;
  double covariance;
};
KalmanSteadyState kalman_steady_state(double q, double r);

}  // namespace shipland
