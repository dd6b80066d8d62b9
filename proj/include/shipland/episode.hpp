#pragma once

#include <string>
#include <vector>

#include "shipland/config.hpp"

namespace shipland {

enum class TerminalEvent { Landed, Timeout, Abort };

const char* to_string(TerminalEvent e);

/// One row of the episode time series. Column order in CSV output follows
/// the field order here.
struct TickRecord {
  double t = 0.0;
  int mode = 5;
  ControlVector cmd;
  Vec3 position = Vec3::Zero();
  double heading_deg = 0.0;
  Vec3 velocity = Vec3::Zero();
  double ship_x = 0.0;
  double ship_y = 0.0;
  double ship_heading_deg = 0.0;
  double deck_roll_deg = 0.0;
  double deck_pitch_deg = 0.0;
  double deck_heave_m = 0.0;
  /// Vehicle offset from the nominal pad centre in ship axes (truth).
  double true_forward_m = 0.0;
  double true_left_m = 0.0;
  double true_height_m = 0.0;  // above nominal deck height
  double true_rel_yaw_deg = 0.0;
  bool has_estimate = false;
  double est_x = 0.0;
  double est_y = 0.0;
  double est_z = 0.0;
  double est_yaw_raw_deg = 0.0;
  double est_yaw_deg = 0.0;  // after the Kalman filter
  double est_forward_m = 0.0;
  double est_left_m = 0.0;
  bool bar_detected = false;
  bool ship_detected = false;
};

struct ModeTransition {
  double t = 0.0;
  int from = 5;
  int to = 5;
};

struct EpisodeLog {
  std::uint64_t seed = 0;
  std::vector<TickRecord> ticks;
  std::vector<ModeTransition> transitions;
  TerminalEvent terminal = TerminalEvent::Timeout;
  std::string terminal_reason;
  double end_time = 0.0;
  /// Touchdown point in deck coordinates (x forward, y port), m.
  double touchdown_x = 0.0;
  double touchdown_y = 0.0;
  double touchdown_roll_deg = 0.0;
  double touchdown_pitch_deg = 0.0;
  bool inside_box = false;
  int corner_attempts = 0;
  int corner_successes = 0;
  int ml_detections = 0;
  /// Range from the vehicle to the bar at each transition, m.
  std::vector<double> transition_ranges;

  bool landed() const { return terminal == TerminalEvent::Landed; }
};

/// Runs one closed-loop episode. Deterministic for a given configuration.
/// Throws ConfigInvalid.
EpisodeLog run_episode(const EpisodeConfig& cfg);

}  // namespace shipland
