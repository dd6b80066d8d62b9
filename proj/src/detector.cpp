#include "shipland/detector.hpp"

#include <algorithm>
#include <cmath>

#include "shipland/error.hpp"

namespace shipland {

const char* to_string(ObjectClass c) { return c == ObjectClass::Ship ? "ship" : "bar"; }

double max_detection_range(ObjectClass object, double physical_area_m2, const DetectorParams& p) {
  if (object == ObjectClass::Ship) return p.ship_reference_range_m * (physical_area_m2 / p.ship_reference_area_m2);
  return p.bar_reference_range_m * (physical_area_m2 / p.bar_reference_area_m2);
}

std::optional<Detection> mock_detect(const DetectionTarget& target, const Pose& camera_pose, const CameraModel& camera,
                                     double timestamp, const DetectorParams& params, std::mt19937_64* rng) {
  const Vec3 center = target.pose.position();
  const double range = (center - camera_pose.position()).norm();
  if (range > max_detection_range(target.object, target.area(), params)) return std::nullopt;

  const double hw = target.width_m / 2.0;
  const double hh = target.height_m / 2.0;
  double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
  for (const Vec3& local : {Vec3(-hw, hh, 0), Vec3(hw, hh, 0), Vec3(hw, -hh, 0), Vec3(-hw, -hh, 0)}) {
    const Vec3 p_cam = camera_pose.rotation().transpose() * (target.pose.apply(local) - camera_pose.position());
    if (!(p_cam.z() > 0.0)) return std::nullopt;
    const Pixel px = project_camera_point(camera, p_cam);
    umin = std::min(umin, px.u);
    umax = std::max(umax, px.u);
    vmin = std::min(vmin, px.v);
    vmax = std::max(vmax, px.v);
  }

  Detection d;
  d.object = target.object;
  d.timestamp = timestamp;
  d.center = {(umin + umax) / 2.0, (vmin + vmax) / 2.0};
  d.area_px = (umax - umin) * (vmax - vmin);
  if (rng != nullptr) {
    std::normal_distribution<double> unit(0.0, 1.0);
    d.center.u += params.center_noise_px * unit(*rng);
    d.center.v += params.center_noise_px * unit(*rng);
    d.area_px *= std::max(0.05, 1.0 + params.area_noise * unit(*rng));
  }
  if (!camera.contains(d.center) || !(d.area_px > 0.0)) return std::nullopt;
  return d;
}

}  // namespace shipland
