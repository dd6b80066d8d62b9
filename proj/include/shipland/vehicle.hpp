#pragma once

#include "shipland/control.hpp"
#include "shipland/geometry.hpp"

namespace shipland {

struct VehicleState {
  Vec3 position = Vec3::Zero();  // world, m
  double heading_deg = 0.0;
  Vec3 velocity = Vec3::Zero();  // world, m/s
  double heading_rate_dps = 0.0;
  double time = 0.0;
};

/// First-order response of the inner-loop autopilot to percent commands.
/// Positive pitch flies forward, positive roll flies right, positive heave
/// climbs, positive yaw turns counter-clockwise.
struct VehicleParams {
  double v_max_horizontal = 5.0;
  double v_max_vertical = 2.0;
  double yaw_rate_max_dps = 60.0;
  double tau = 0.3;
};

/// Commanded world velocity for `cmd` at the given heading. The horizontal
/// part is capped at v_max_horizontal in any direction.
Vec3 commanded_velocity(const ControlVector& cmd, double heading_deg, const VehicleParams& params = {});

/// Exact discretisation of dv/dt = (v_cmd + wind - v) / tau over `dt`.
/// Throws NonPositiveDt.
VehicleState vehicle_step(const VehicleState& v, const ControlVector& cmd, const Vec3& wind, double dt,
                          const VehicleParams& params = {});

struct WindParams {
  Vec3 mean = Vec3::Zero();  // m/s
  double gust_amplitude = 0.0;
  double gust_period_s = 8.0;
  Vec3 gust_direction = Vec3::UnitY();
  double max_speed = 9.0;
  /// The autopilot cancels slowly varying wind; what remains is the
  /// high-pass part of the raw wind, with this time constant, times `coupling`.
  double rejection_tau_s = 2.0;
  double coupling = 1.0;
};

class WindModel {
 public:
  explicit WindModel(WindParams params = {});

  /// Raw air velocity at time t, capped at `max_speed`.
  Vec3 raw(double t) const;
  /// Advances the rejection filter and returns the disturbance felt by the
  /// vehicle.
  Vec3 step(double t, double dt);

 private:
  WindParams params_;
  Vec3 low_pass_ = Vec3::Zero();
};

}  // namespace shipland
