#pragma once

#include <optional>
#include <vector>

#include "shipland/geometry.hpp"

namespace shipland {

/// Deck displacement relative to the ship body at one instant.
struct DeckState {
  double roll_deg = 0.0;
  double pitch_deg = 0.0;
  double yaw_deg = 0.0;
  double surge_m = 0.0;
  double sway_m = 0.0;
  double heave_m = 0.0;
};

/// Travel limits of the motion platform.
struct DeckLimits {
  static constexpr double roll_deg = 13.0;
  static constexpr double pitch_deg = 15.0;
  static constexpr double yaw_deg = 16.0;
  static constexpr double surge_m = 1.02;
  static constexpr double sway_m = 1.02;
  static constexpr double heave_m = 0.64;
};

DeckState clamp_to_limits(const DeckState& s);
bool within_limits(const DeckState& s);

struct SineComponent {
  double amplitude = 0.0;
  double period_s = 1.0;
  double phase_deg = 0.0;
};

/// Per-axis sums of sinusoids. Angles in degrees, displacements in metres.
struct MotionProfile {
  std::vector<SineComponent> roll, pitch, yaw, surge, sway, heave;

  void validate() const;
  bool empty() const;
  /// Longest component period; zero for an empty profile.
  double longest_period() const;
};

struct NatopsParams {
  double roll_amplitude_deg = 8.0;
  double roll_period_s = 10.1;
  double pitch_amplitude_deg = 3.0;
  double pitch_period_s = 6.5;
  double roll_phase_deg = 0.0;
  double pitch_phase_deg = 0.0;
};

/// roll = A_r sin(2 pi t / T_r + phi_r), pitch = A_p sin(2 pi t / T_p + phi_p).
DeckState natops_motion(double t, const NatopsParams& params = {});
MotionProfile natops_profile(const NatopsParams& params = {});

/// Two components per axis standing in for recorded sea-state-6 frigate
/// motion, scaled inside the platform limits.
MotionProfile perry_surrogate_profile();

/// Sum of sinusoids per axis, hard-clamped to DeckLimits.
DeckState multisine_motion(double t, const MotionProfile& profile);

enum class PathKind { Stationary, Straight, SPattern, Turn90 };

struct SpeedKnot {
  double t_s = 0.0;
  double speed_mps = 0.0;
};

/// Planar ship track. Speed is piecewise linear between knots and held
/// constant after the last knot. Heading is a function of travelled distance.
struct ShipPath {
  PathKind kind = PathKind::Stationary;
  double x0_m = 0.0;
  double y0_m = 0.0;
  double heading0_deg = 0.0;
  std::vector<SpeedKnot> speed_schedule;
  double leg_length_m = 20.0;         // straight run before a turn or weave
  double turn_radius_m = 10.0;        // Turn90
  double weave_amplitude_deg = 65.0;  // SPattern: peak deviation, swing is twice this
  double weave_wavelength_m = 80.0;   // SPattern

  static constexpr double max_speed_mps = 4.5;

  void validate() const;
  double speed_at(double t) const;
  double distance_at(double t) const;
  double heading_at_distance(double s) const;
};

/// Platform body with its dimensions and where the deck and bar are mounted.
/// Ship frame: origin at platform centre at sea level, x along the heading,
/// y to port, z up.
struct ShipGeometry {
  double width_m = 1.8;
  double height_m = 1.8;
  double length_m = 3.0;
  double deck_size_m = 1.22;
  Vec3 deck_center{-0.7, 0.0, 1.0};
  Vec3 bar_center{1.3, 0.0, 1.6};
  /// Aft face of the platform, the object the long-range detector sees.
  Vec3 aft_face_center{-1.5, 0.0, 0.9};

  void validate() const;
  /// Horizontal distance from the pad centre to the bar plane.
  double bar_standoff() const { return bar_center.x() - deck_center.x(); }
};

struct ShipState {
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_deg = 0.0;
  double speed_mps = 0.0;
  double width_m = 1.8;
  double height_m = 1.8;
  double length_m = 3.0;

  /// Level pose of the ship frame in the world.
  Pose pose() const;
};

/// Precomputed track for efficient repeated evaluation. Position is the
/// integral of the speed schedule along the path geometry.
class ShipTrajectory {
 public:
  explicit ShipTrajectory(ShipPath path, double horizon_s = 1800.0);

  ShipState state(double t) const;
  const ShipPath& path() const { return path_; }

 private:
  Vec2 position_at_distance(double s) const;

  ShipPath path_;
  double step_m_ = 0.05;
  std::vector<Vec2> table_;  // positions at s = k * step_m_ (SPattern only)
};

ShipState ship_state(double t, const ShipPath& path);

/// Gyro-stabilised horizon bar, fixed to the superstructure: level, yawed
/// with the ship, unaffected by deck motion.
Pose bar_pose(const ShipState& ship, const DeckState& deck, const ShipGeometry& geometry = {});

/// Deck frame in the world: ship pose, then the mount offset, then surge/
/// sway/heave, then rotation about the deck centre (roll, pitch, yaw order).
Pose deck_pose_world(const ShipState& ship, const DeckState& deck, const ShipGeometry& geometry = {});

/// Height of the deck surface below world (x, y); nullopt when that point is
/// outside the deck square.
std::optional<double> deck_surface_height(const Pose& deck_pose, double half_size, double x, double y);

/// World point expressed in deck coordinates (x forward, y port, z normal).
Vec3 to_deck_frame(const Pose& deck_pose, const Vec3& world_point);

}  // namespace shipland
