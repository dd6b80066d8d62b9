#pragma once

#include <cstdint>
#include <string>

#include "shipland/cue_pipeline.hpp"
#include "shipland/deck_motion.hpp"
#include "shipland/detector.hpp"
#include "shipland/mode_machine.hpp"
#include "shipland/vehicle.hpp"

namespace shipland {

enum class MotionKind { None, Natops, Multisine };

struct MotionConfig {
  MotionKind kind = MotionKind::Natops;
  NatopsParams natops;
  MotionProfile profile;
  /// Added to simulation time before evaluating the motion; Monte Carlo runs
  /// randomise it to land at random points of the motion cycle.
  double time_offset_s = 0.0;

  DeckState at(double t) const;
};

struct NoiseConfig {
  bool enabled = true;
  double image_sigma = 2.0;
  double detector_center_px = 2.0;
  double detector_area = 0.05;
  double magnetometer_deg = 2.0;
  double cadence_jitter = 0.2;
};

struct KalmanConfig {
  double q = 0.005;
  double r = 0.05;
  bool literal_gain_form = false;
  bool filter_yaw = true;
  bool filter_x = false;
  bool filter_y = false;
  bool filter_z = false;
};

struct SimConfig {
  std::uint64_t seed = 1;
  double dt = 0.01;
  double max_time_s = 120.0;
  double ml_period_s = 0.5;
  double ml_latency_s = 0.5;
  double corner_period_s = 0.03;
  double corner_latency_s = 0.03;
  /// Attempt interval of the corner pipeline while it has no track.
  double corner_idle_period_s = 0.5;
  /// The pipeline stays on its fast cadence this long after a success.
  double corner_engaged_hold_s = 0.5;
  Vec3 initial_position{-4.7, 0.0, 1.8};
  double initial_heading_deg = 0.0;
  /// Allows starting beyond the ship detection range.
  bool search_scenario = false;
  double landing_half_width_m = 0.35;
  ModeParams modes;
  std::string debug_dir;
  int debug_every = 10;
};

struct EpisodeConfig {
  CameraModel camera;
  CueSpec cue;
  ShipGeometry ship;
  MotionConfig motion;
  ShipPath path;
  ControllerConfig gains;
  NoiseConfig noise;
  WindParams wind;
  VehicleParams vehicle;
  VisionParams vision;
  DetectorParams detector;
  KalmanConfig kalman;
  SimConfig sim;

  /// Throws ConfigInvalid.
  void validate() const;
  /// Copies camera size, periods and geometry into the dependent sections.
  void sync_derived();
};

EpisodeConfig load_config(const std::string& path);
EpisodeConfig parse_config(const std::string& json_text);
std::string dump_config(const EpisodeConfig& cfg);

/// Named demonstration scenarios: longrange, natops, perry, spath, turn90.
EpisodeConfig scenario_config(const std::string& name);

}  // namespace shipland
