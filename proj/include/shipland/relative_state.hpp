#pragma once

#include <optional>

#include "shipland/pnp.hpp"

namespace shipland {

/// Cue position seen from the vehicle: x forward, y to the right, z up (the
/// cue above the camera is positive). yaw is the cue's heading minus the
/// vehicle heading, degrees, positive counter-clockwise.
struct RelativeState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double yaw_deg = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
  double timestamp = 0.0;
};

/// Frame bookkeeping from a PnP pose, plus finite-difference velocities
/// against `previous`. Throws NotConverged for an unconverged solve and
/// NonPositiveDt when the timestamp does not advance.
RelativeState pose_to_relative_state(const PnPResult& pnp, const std::optional<RelativeState>& previous,
                                     double timestamp);

/// Vehicle position relative to the pad centre in the ship's horizontal
/// axes: forward along the ship heading, left to port.
struct PadOffset {
  double forward = 0.0;
  double left = 0.0;
};

/// Uses the known bar-to-pad standoff (pad centre lies `standoff` behind the
/// bar along the ship axis).
PadOffset pad_offset(const RelativeState& rel, double standoff);

/// Pad centre in the vehicle body frame: forward and left components.
PadOffset pad_in_body(const RelativeState& rel, double standoff);

/// Pad offset of the track inside the inclusive +/- half_width box.
bool landing_trigger(const RelativeState& rel, double standoff, double half_width = 0.35);

}  // namespace shipland
