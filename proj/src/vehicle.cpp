#include "shipland/vehicle.hpp"

#include <cmath>

#include "shipland/error.hpp"

namespace shipland {

Vec3 commanded_velocity(const ControlVector& cmd, double heading_deg, const VehicleParams& p) {
  const ControlVector c = cmd.saturated();
  double fwd = c.pitch / 100.0 * p.v_max_horizontal;
  double left = -c.roll / 100.0 * p.v_max_horizontal;
  // Combined pitch and roll may not exceed the horizontal speed limit.
  const double horizontal = std::hypot(fwd, left);
  if (horizontal > p.v_max_horizontal) {
    fwd *= p.v_max_horizontal / horizontal;
    left *= p.v_max_horizontal / horizontal;
  }
  const double h = deg2rad(heading_deg);
  return {fwd * std::cos(h) - left * std::sin(h), fwd * std::sin(h) + left * std::cos(h),
          c.heave / 100.0 * p.v_max_vertical};
}

VehicleState vehicle_step(const VehicleState& v, const ControlVector& cmd, const Vec3& wind, double dt,
                          const VehicleParams& p) {
  if (!(dt > 0.0)) throw Error(ErrorCode::NonPositiveDt, "vehicle step needs dt > 0");
  const double decay = std::exp(-dt / p.tau);
  const double gain = p.tau * (1.0 - decay);

  const Vec3 target = commanded_velocity(cmd, v.heading_deg, p) + wind;
  VehicleState out = v;
  out.position = v.position + target * dt + (v.velocity - target) * gain;
  out.velocity = target + (v.velocity - target) * decay;

  const double rate_target = saturate(cmd.yaw) / 100.0 * p.yaw_rate_max_dps;
  out.heading_deg = wrap_deg(v.heading_deg + rate_target * dt + (v.heading_rate_dps - rate_target) * gain);
  out.heading_rate_dps = rate_target + (v.heading_rate_dps - rate_target) * decay;
  out.time = v.time + dt;
  return out;
}

WindModel::WindModel(WindParams params) : params_(std::move(params)) {
  if (params_.max_speed < 0.0 || !(params_.rejection_tau_s > 0.0) || !(params_.gust_period_s > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "wind parameters out of range");
  }
  if (params_.gust_direction.norm() > 0.0) params_.gust_direction.normalize();
}

Vec3 WindModel::raw(double t) const {
  Vec3 w = params_.mean +
           params_.gust_amplitude * std::sin(2.0 * std::numbers::pi * t / params_.gust_period_s) *
               params_.gust_direction;
  const double n = w.norm();
  if (n > params_.max_speed && n > 0.0) w *= params_.max_speed / n;
  return w;
}

Vec3 WindModel::step(double t, double dt) {
  const Vec3 w = raw(t);
  low_pass_ += (w - low_pass_) * (1.0 - std::exp(-dt / params_.rejection_tau_s));
  return params_.coupling * (w - low_pass_);
}

}  // namespace shipland
