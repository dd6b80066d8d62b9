#pragma once

#include <array>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace shipland {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees to (-180, 180].
double wrap_deg(double deg);

/// Yaw-pitch-roll Euler angles in degrees, Z-Y-X intrinsic:
/// R = Rz(yaw) * Ry(pitch) * Rx(roll).
struct EulerYPR {
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
};

Mat3 rotation_from_euler(const EulerYPR& e);
EulerYPR euler_from_rotation(const Mat3& r);

/// Rigid transform mapping coordinates expressed in a child frame into its
/// parent frame: p_parent = R * p_child + t.
class Pose {
 public:
  Pose() : rotation_(Mat3::Identity()), position_(Vec3::Zero()) {}
  Pose(const Mat3& rotation, const Vec3& position) : rotation_(rotation), position_(position) {}

  static Pose identity() { return {}; }
  static Pose from_euler(const Vec3& position, const EulerYPR& e) {
    return {rotation_from_euler(e), position};
  }
  static Pose translation(const Vec3& position) { return {Mat3::Identity(), position}; }

  const Mat3& rotation() const { return rotation_; }
  const Vec3& position() const { return position_; }
  EulerYPR euler() const { return euler_from_rotation(rotation_); }

  Vec3 apply(const Vec3& p) const { return rotation_ * p + position_; }
  Pose inverse() const;

 private:
  Mat3 rotation_;
  Vec3 position_;
};

/// Transform that applies b first, then a.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& p);

struct Pixel {
  double u = 0.0;  // column
  double v = 0.0;  // row
};

/// Ideal pinhole camera. Pixel centres sit at integer coordinates.
struct CameraModel {
  double focal_px = 930.0;
  double cx = 640.0;
  double cy = 360.0;
  int width = 1280;
  int height = 720;

  void validate() const;
  bool contains(const Pixel& p, double margin = 0.0) const;
};

/// Projects a point given in the camera optical frame (x right, y down,
/// z forward). Throws NonPositiveDepth when z <= 0.
Pixel project_camera_point(const CameraModel& camera, const Vec3& p_cam);

/// Projects a world point through a camera whose pose maps optical-frame
/// coordinates into the world frame.
Pixel project_point(const Pose& camera_pose_in_world, const CameraModel& camera, const Vec3& point);

/// Two congruent rectangles side by side. Planar coordinates use X to the
/// right and Y up as seen by an observer facing the cue, origin at the centre.
struct CueSpec {
  double rectangle_width = 0.40;
  double rectangle_height = 0.10;
  double gap = 0.30;

  void validate() const;
  double total_width() const { return 2.0 * rectangle_width + gap; }
  /// Left rectangle TL, TR, BR, BL then right rectangle in the same order.
  std::array<Vec2, 8> planar_corners() const;
  std::array<Vec3, 8> object_points() const;
};

/// Corner positions of the cue, planar coordinates embedded at z = 0 of the
/// cue frame and mapped through `cue_pose`.
std::array<Vec3, 8> cue_corners_world(const CueSpec& spec, const Pose& cue_pose);

/// Rotation from the cue's planar frame into a level bar frame
/// (x forward along the ship, y left, z up). The cue faces aft.
Mat3 cue_mount_rotation();

/// Pose of the cue's planar frame for a given level bar pose.
Pose cue_pose_world(const Pose& bar_pose);

/// Rotation from the camera optical frame into the vehicle body frame
/// (x forward, y left, z up) for a level forward-looking gimbal.
Mat3 camera_in_body_rotation();

/// Gimbal-stabilised camera: level, yawed with the vehicle heading.
Pose camera_pose_world(const Vec3& vehicle_position, double heading_deg);

}  // namespace shipland
