#include "shipland/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shipland/error.hpp"

namespace shipland {

double wrap_deg(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w <= 0.0) w += 360.0;
  return w - 180.0;
}

Mat3 rotation_from_euler(const EulerYPR& e) {
  return (Eigen::AngleAxisd(deg2rad(e.yaw_deg), Vec3::UnitZ()) *
          Eigen::AngleAxisd(deg2rad(e.pitch_deg), Vec3::UnitY()) *
          Eigen::AngleAxisd(deg2rad(e.roll_deg), Vec3::UnitX()))
      .toRotationMatrix();
}

EulerYPR euler_from_rotation(const Mat3& r) {
  const double sp = std::clamp(-r(2, 0), -1.0, 1.0);
  EulerYPR e;
  e.pitch_deg = rad2deg(std::asin(sp));
  e.yaw_deg = rad2deg(std::atan2(r(1, 0), r(0, 0)));
  e.roll_deg = rad2deg(std::atan2(r(2, 1), r(2, 2)));
  return e;
}

Pose Pose::inverse() const {
  const Mat3 rt = rotation_.transpose();
  return {rt, -(rt * position_)};
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.rotation() * b.rotation(), a.rotation() * b.position() + a.position()};
}

Pose inverse(const Pose& p) { return p.inverse(); }

void CameraModel::validate() const {
  if (!(focal_px > 0.0) || width <= 0 || height <= 0) {
    throw Error(ErrorCode::ConfigInvalid, "camera focal length and resolution must be positive");
  }
  if (cx < 0.0 || cx > width - 1 || cy < 0.0 || cy > height - 1) {
    throw Error(ErrorCode::ConfigInvalid, "principal point must lie inside the image");
  }
}

bool CameraModel::contains(const Pixel& p, double margin) const {
  return p.u >= margin - 0.5 && p.v >= margin - 0.5 && p.u <= width - 0.5 - margin &&
         p.v <= height - 0.5 - margin;
}

Pixel project_camera_point(const CameraModel& camera, const Vec3& p_cam) {
  if (!(p_cam.z() > 0.0)) {
    throw Error(ErrorCode::NonPositiveDepth, "depth " + std::to_string(p_cam.z()));
  }
  return {camera.cx + camera.focal_px * p_cam.x() / p_cam.z(),
          camera.cy + camera.focal_px * p_cam.y() / p_cam.z()};
}

Pixel project_point(const Pose& camera_pose_in_world, const CameraModel& camera, const Vec3& point) {
  const Vec3 p_cam = camera_pose_in_world.rotation().transpose() * (point - camera_pose_in_world.position());
  return project_camera_point(camera, p_cam);
}

void CueSpec::validate() const {
  if (!(rectangle_width > 0.0) || !(rectangle_height > 0.0) || !(gap > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "cue dimensions must be positive");
  }
}

std::array<Vec2, 8> CueSpec::planar_corners() const {
  const double h = rectangle_height / 2.0;
  const double inner = gap / 2.0;
  const double outer = inner + rectangle_width;
  return {Vec2(-outer, h), Vec2(-inner, h), Vec2(-inner, -h), Vec2(-outer, -h),
          Vec2(inner, h),  Vec2(outer, h),  Vec2(outer, -h),  Vec2(inner, -h)};
}

std::array<Vec3, 8> CueSpec::object_points() const {
  std::array<Vec3, 8> out;
  const auto planar = planar_corners();
  for (std::size_t i = 0; i < 8; ++i) out[i] = Vec3(planar[i].x(), planar[i].y(), 0.0);
  return out;
}

std::array<Vec3, 8> cue_corners_world(const CueSpec& spec, const Pose& cue_pose) {
  auto pts = spec.object_points();
  for (auto& p : pts) p = cue_pose.apply(p);
  return pts;
}

Mat3 cue_mount_rotation() {
  // Columns: cue X (observer's right = ship starboard), cue Y (up),
  // cue Z (towards the observer = aft).
  Mat3 r;
  r.col(0) = Vec3(0.0, -1.0, 0.0);
  r.col(1) = Vec3(0.0, 0.0, 1.0);
  r.col(2) = Vec3(-1.0, 0.0, 0.0);
  return r;
}

Pose cue_pose_world(const Pose& bar_pose) {
  return compose(bar_pose, Pose(cue_mount_rotation(), Vec3::Zero()));
}

Mat3 camera_in_body_rotation() {
  Mat3 r;
  r.col(0) = Vec3(0.0, -1.0, 0.0);  // optical x = right
  r.col(1) = Vec3(0.0, 0.0, -1.0);  // optical y = down
  r.col(2) = Vec3(1.0, 0.0, 0.0);   // optical z = forward
  return r;
}

Pose camera_pose_world(const Vec3& vehicle_position, double heading_deg) {
  const Mat3 yaw = Eigen::AngleAxisd(deg2rad(heading_deg), Vec3::UnitZ()).toRotationMatrix();
  return {yaw * camera_in_body_rotation(), vehicle_position};
}

}  // namespace shipland
