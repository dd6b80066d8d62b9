#include "shipland/control.hpp"

#include <algorithm>
#include <cmath>

#include "shipland/error.hpp"

namespace shipland {

double saturate(double u) { return std::clamp(u, -kCommandLimit, kCommandLimit); }

ControlVector ControlVector::saturated() const {
  return {saturate(pitch), saturate(roll), saturate(heave), saturate(yaw)};
}

bool ControlVector::within_bounds() const {
  auto ok = [](double v) { return std::abs(v) <= kCommandLimit; };
  return ok(pitch) && ok(roll) && ok(heave) && ok(yaw);
}

ExpGainTable ExpGainTable::ship() { return {{0.008, 0.0, 5000.0, 0.0}, {1.2, 0.0158, 640.0, 1.0}, {3.0, 0.0108, 360.0, 1.0}}; }

ExpGainTable ExpGainTable::bar() { return {{0.004, 0.0, 3400.0, 0.0}, {1.0, 0.0158, 640.0, 1.0}, {5.0, 0.0108, 360.0, 1.0}}; }

ExpGainTable ExpGainTable::rescaled(int width, int height) const {
  ExpGainTable t = *this;
  const double sx = width / 1280.0;
  const double sy = height / 720.0;
  t.roll.c *= sx;
  t.heave.c *= sy;
  t.pitch.c *= sx * sy;
  return t;
}

double exp_control_raw(double r, const ExpGainSet& g, bool literal_form) {
  const double e = r - g.c;
  if (e == 0.0) return 0.0;
  if (literal_form && e < 0.0) return -g.m * (std::exp(g.a * e) - g.d) * e;
  const double mag = std::abs(e);
  return std::copysign(g.m * (std::exp(g.a * mag) - g.d) * mag, e);
}

double exp_control(double r, const ExpGainSet& g, bool literal_form) {
  return saturate(exp_control_raw(r, g, literal_form));
}

double gaussian_derivative_gain(double de, const ProbPidGainSet& g) {
  const double z = (de - g.mu) / g.sigma;
  return g.b * std::exp(-0.5 * z * z);
}

std::pair<double, PidChannelState> prob_pid_step(const PidChannelState& state, double e, double dt,
                                                 const ProbPidGainSet& g, double integral_limit, PidTerms* terms) {
  if (!(dt > 0.0)) throw Error(ErrorCode::NonPositiveDt, "controller step needs dt > 0");
  PidChannelState next = state;
  next.integral += e * dt;
  if (g.ki > 0.0) {
    const double bound = integral_limit / g.ki;
    next.integral = std::clamp(next.integral, -bound, bound);
  }
  const double de = e - (state.has_previous ? state.previous_error : 0.0);
  PidTerms t;
  t.p = g.kp * e;
  t.i = g.ki * next.integral;
  t.d = gaussian_derivative_gain(de, g) * de / dt;
  next.previous_error = e;
  next.last_time = state.last_time + dt;
  next.has_previous = true;
  if (terms != nullptr) *terms = t;
  return {saturate(t.raw()), next};
}

bool landing_trigger(double forward_offset, double side_offset, double half_width) {
  return std::abs(forward_offset) <= half_width && std::abs(side_offset) <= half_width;
}

}  // namespace shipland
