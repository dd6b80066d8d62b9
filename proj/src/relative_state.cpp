#include "shipland/relative_state.hpp"

#include <cmath>

#include "shipland/control.hpp"
#include "shipland/error.hpp"

namespace shipland {

RelativeState pose_to_relative_state(const PnPResult& pnp, const std::optional<RelativeState>& previous,
                                     double timestamp) {
  if (!pnp.converged) throw Error(ErrorCode::NotConverged, "PnP did not converge");
  const Vec3& t = pnp.pose.position();
  RelativeState s;
  s.x = t.z();
  s.y = t.x();
  s.z = -t.y();
  // Camera forward axis expressed in the cue frame; the cue normal points
  // back at the viewer, so a head-on view gives (0, 0, -1).
  const Vec3 forward = pnp.pose.rotation().transpose() * Vec3::UnitZ();
  s.yaw_deg = rad2deg(std::atan2(forward.x(), -forward.z()));
  s.timestamp = timestamp;
  if (previous) {
    const double dt = timestamp - previous->timestamp;
    if (!(dt > 0.0)) throw Error(ErrorCode::NonPositiveDt, "timestamps must increase");
    s.v_x = (s.x - previous->x) / dt;
    s.v_y = (s.y - previous->y) / dt;
  }
  return s;
}

PadOffset pad_in_body(const RelativeState& rel, double standoff) {
  const double psi = deg2rad(rel.yaw_deg);
  return {rel.x - standoff * std::cos(psi), -rel.y - standoff * std::sin(psi)};
}

PadOffset pad_offset(const RelativeState& rel, double standoff) {
  // Bar position in the body frame, rotated into the ship's axes.
  const double psi = deg2rad(rel.yaw_deg);
  const double bx = rel.x;
  const double by = -rel.y;
  const double sx = std::cos(psi) * bx + std::sin(psi) * by;
  const double sy = -std::sin(psi) * bx + std::cos(psi) * by;
  return {standoff - sx, -sy};
}

bool landing_trigger(const RelativeState& rel, double standoff, double half_width) {
  const PadOffset pad = pad_offset(rel, standoff);
  return landing_trigger(pad.forward, pad.left, half_width);
}

}  // namespace shipland
