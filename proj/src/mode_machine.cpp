#include "shipland/mode_machine.hpp"

#include <tuple>

#include "shipland/error.hpp"

namespace shipland {

const char* to_string(FlightMode m) {
  switch (m) {
    case FlightMode::VerticalLanding: return "vertical_landing";
    case FlightMode::CornerTracking: return "corner_tracking";
    case FlightMode::BarTracking: return "bar_tracking";
    case FlightMode::ShipTracking: return "ship_tracking";
    case FlightMode::HoldLast: return "hold_last";
  }
  return "unknown";
}

namespace {

bool corner_fresh(const PerceptionSummary& p, const ModeParams& params) {
  return p.corner.has_value() && p.corner_age <= params.corner_fresh_s;
}

FlightMode desired_below_landing(const PerceptionSummary& p, const ModeParams& params) {
  if (corner_fresh(p, params)) return FlightMode::CornerTracking;
  if (p.bar && p.bar_age <= params.ml_fresh_s) return FlightMode::BarTracking;
  if (p.ship && p.ship_age <= params.ml_fresh_s) return FlightMode::ShipTracking;
  return FlightMode::HoldLast;
}

std::uint64_t source_seq(FlightMode m, const PerceptionSummary& p) {
  switch (m) {
    case FlightMode::VerticalLanding:
    case FlightMode::CornerTracking: return p.corner_seq;
    case FlightMode::BarTracking: return p.bar_seq;
    case FlightMode::ShipTracking: return p.ship_seq;
    case FlightMode::HoldLast: break;
  }
  return 0;
}

}  // namespace

FlightMode desired_mode(const PerceptionSummary& p, const ModeParams& params) {
  if (p.landing_condition && corner_fresh(p, params)) return FlightMode::VerticalLanding;
  return desired_below_landing(p, params);
}

ModeMachine::ModeMachine(ModeParams params, FlightMode initial) : params_(params), mode_(initial) {
  if (params_.hysteresis < 1) throw Error(ErrorCode::ConfigInvalid, "hysteresis must be at least 1");
}

void ModeMachine::reset_candidate() {
  candidate_.reset();
  count_ = 0;
  last_seq_.reset();
}

FlightMode ModeMachine::step(const PerceptionSummary& p) {
  if (mode_ == FlightMode::VerticalLanding) {
    if (corner_fresh(p, params_) || p.height_above_deck <= params_.abort_height_m) return mode_;
    mode_ = desired_below_landing(p, params_);
    reset_candidate();
    return mode_;
  }

  const FlightMode want = desired_mode(p, params_);
  if (mode_number(want) >= mode_number(mode_)) {
    mode_ = want;
    reset_candidate();
    return mode_;
  }

  if (candidate_ != want) {
    candidate_ = want;
    count_ = 0;
    last_seq_.reset();
  }
  const std::uint64_t seq = source_seq(want, p);
  if (last_seq_ != seq) {
    ++count_;
    last_seq_ = seq;
  }
  if (count_ >= params_.hysteresis) {
    mode_ = want;
    reset_candidate();
  }
  return mode_;
}

FlightMode step_mode(ModeMachine& machine, const PerceptionSummary& p) { return machine.step(p); }

Controllers::Controllers(ControllerConfig config)
    : config_(std::move(config)),
      ship_(config_.ship.rescaled(config_.image_width, config_.image_height)),
      bar_(config_.bar.rescaled(config_.image_width, config_.image_height)) {}

void Controllers::reset(FlightMode mode, double t) {
  active_ = mode;
  mode_entry_time_ = t;
  pitch_ = roll_ = heave_ = yaw_ = yaw_long_ = PidChannelState{};
  last_corner_seq_.reset();
  last_ml_seq_.reset();
}

ControlVector Controllers::close_range_errors(const RelativeState& rel) const {
  const PadOffset pad = pad_in_body(rel, config_.standoff_m);
  return {pad.forward, -pad.left, rel.z - config_.hover_bar_z_m, rel.yaw_deg};
}

ControlVector Controllers::command(FlightMode mode, const PerceptionSummary& p, const ControlVector& last_command,
                                   double t) {
  if (active_ != mode) {
    reset(mode, t);
    output_ = last_command;
  }
  switch (mode) {
    case FlightMode::VerticalLanding:
      output_ = {0.0, 0.0, -config_.descent_percent, 0.0};
      break;

    case FlightMode::CornerTracking: {
      if (!p.corner) throw Error(ErrorCode::InconsistentMode, "corner tracking without a corner track");
      if (last_corner_seq_ == p.corner_seq) break;
      double dt = config_.corner_period_s;
      if (last_corner_seq_ && p.corner->timestamp > last_corner_time_) dt = p.corner->timestamp - last_corner_time_;
      last_corner_seq_ = p.corner_seq;
      last_corner_time_ = p.corner->timestamp;
      const ControlVector e = close_range_errors(*p.corner);
      const auto& g = config_.close;
      const double lim = config_.integral_limit;
      std::tie(output_.pitch, pitch_) = prob_pid_step(pitch_, e.pitch, dt, g.pitch, lim);
      std::tie(output_.roll, roll_) = prob_pid_step(roll_, e.roll, dt, g.roll, lim);
      std::tie(output_.heave, heave_) = prob_pid_step(heave_, e.heave, dt, g.heave, lim);
      std::tie(output_.yaw, yaw_) = prob_pid_step(yaw_, e.yaw, dt, g.yaw, lim);
      break;
    }

    case FlightMode::BarTracking:
    case FlightMode::ShipTracking: {
      const bool bar = mode == FlightMode::BarTracking;
      const auto& det = bar ? p.bar : p.ship;
      if (!det) throw Error(ErrorCode::InconsistentMode, bar ? "bar tracking without a bar detection"
                                                             : "ship tracking without a ship detection");
      const std::uint64_t seq = bar ? p.bar_seq : p.ship_seq;
      if (last_ml_seq_ == seq) break;
      last_ml_seq_ = seq;
      const ExpGainTable& g = bar ? bar_ : ship_;
      const bool literal = config_.exp_literal_form;
      output_.pitch = -exp_control(det->area_px, g.pitch, literal);
      output_.roll = exp_control(det->center.u, g.roll, literal);
      output_.heave = -exp_control(det->center.v, g.heave, literal);
      const double heading_error = wrap_deg(p.ship_heading_deg - p.magnetometer_heading_deg);
      std::tie(output_.yaw, yaw_long_) =
          prob_pid_step(yaw_long_, heading_error, config_.ml_period_s, config_.yaw_long, config_.integral_limit);
      break;
    }

    case FlightMode::HoldLast:
      if (t - mode_entry_time_ >= config_.hold_timeout_s) output_ = {};
      break;
  }
  output_ = output_.saturated();
  return output_;
}

ControlVector select_command(FlightMode mode, const PerceptionSummary& p, Controllers& controllers,
                             const ControlVector& last_command, double t) {
  return controllers.command(mode, p, last_command, t);
}

}  // namespace shipland
