#pragma once

#include <cstdint>
#include <optional>

#include "shipland/control.hpp"
#include "shipland/detector.hpp"
#include "shipland/relative_state.hpp"

namespace shipland {

enum class FlightMode : int {
  VerticalLanding = 1,
  CornerTracking = 2,
  BarTracking = 3,
  ShipTracking = 4,
  HoldLast = 5,
};

const char* to_string(FlightMode m);
inline int mode_number(FlightMode m) { return static_cast<int>(m); }

/// What the vision system has delivered so far. Sequence numbers increase by
/// one per delivered sample of each source; ages are seconds since delivery.
struct PerceptionSummary {
  std::optional<RelativeState> corner;
  double corner_age = 1e9;
  std::uint64_t corner_seq = 0;

  std::optional<Detection> bar;
  double bar_age = 1e9;
  std::uint64_t bar_seq = 0;

  std::optional<Detection> ship;
  double ship_age = 1e9;
  std::uint64_t ship_seq = 0;

  /// Latest corner track puts the vehicle inside the landing box.
  bool landing_condition = false;
  /// Altimeter height above the nominal deck plane, m.
  double height_above_deck = 0.0;
  double magnetometer_heading_deg = 0.0;
  double ship_heading_deg = 0.0;
};

struct ModeParams {
  int hysteresis = 3;
  double ml_fresh_s = 1.0;
  double corner_fresh_s = 0.06;
  double abort_height_m = 0.5;
};

/// Highest-priority mode the perception supports right now.
FlightMode desired_mode(const PerceptionSummary& p, const ModeParams& params = {});

class ModeMachine {
 public:
  explicit ModeMachine(ModeParams params = {}, FlightMode initial = FlightMode::HoldLast);

  FlightMode mode() const { return mode_; }
  /// Advances one tick. Upgrades need `hysteresis` consecutive new samples
  /// from the qualifying source; downgrades are immediate. Vertical landing
  /// only ends through an abort (corner track lost above the abort height).
  FlightMode step(const PerceptionSummary& p);

 private:
  void reset_candidate();

  ModeParams params_;
  FlightMode mode_;
  std::optional<FlightMode> candidate_;
  int count_ = 0;
  std::optional<std::uint64_t> last_seq_;
};

FlightMode step_mode(ModeMachine& machine, const PerceptionSummary& p);

struct ControllerConfig {
  ExpGainTable ship = ExpGainTable::ship();
  ExpGainTable bar = ExpGainTable::bar();
  ProbPidTable close;
  ProbPidGainSet yaw_long{5.5, 0.05, 1.75, 0.0, 5.0};
  bool exp_literal_form = false;
  double integral_limit = 50.0;
  double descent_percent = 60.0;
  double hold_timeout_s = 2.0;
  /// Horizontal distance from the pad centre to the bar.
  double standoff_m = 2.0;
  /// Desired height of the bar relative to the camera while hovering.
  double hover_bar_z_m = -0.2;
  double corner_period_s = 0.03;
  double ml_period_s = 0.5;
  int image_width = 1280;
  int image_height = 720;
};

/// Per-episode controller bank. Each channel updates only when a new sample
/// from its perception source arrives and holds its output in between.
class Controllers {
 public:
  explicit Controllers(ControllerConfig config = {});

  ControlVector command(FlightMode mode, const PerceptionSummary& p, const ControlVector& last_command, double t);
  const ControllerConfig& config() const { return config_; }

  /// Close-range errors for the given track: pitch, roll, heave, yaw.
  ControlVector close_range_errors(const RelativeState& rel) const;

 private:
  void reset(FlightMode mode, double t);

  ControllerConfig config_;
  ExpGainTable ship_;
  ExpGainTable bar_;
  std::optional<FlightMode> active_;
  double mode_entry_time_ = 0.0;
  PidChannelState pitch_, roll_, heave_, yaw_, yaw_long_;
  std::optional<std::uint64_t> last_corner_seq_, last_ml_seq_;
  double last_corner_time_ = 0.0;
  ControlVector output_;
};

/// Command for the active mode. Throws InconsistentMode when the mode needs a
/// perception source that is missing.
ControlVector select_command(FlightMode mode, const PerceptionSummary& p, Controllers& controllers,
                             const ControlVector& last_command, double t);

}  // namespace shipland
