#pragma once

#include <utility>

namespace shipland {

constexpr double kCommandLimit = 100.0;

/// Clamp to the [-100, 100] percent command range.
double saturate(double u);

struct ControlVector {
  double pitch = 0.0;
  double roll = 0.0;
  double heave = 0.0;
  double yaw = 0.0;

  ControlVector saturated() const;
  bool within_bounds() const;
  bool operator==(const ControlVector&) const = default;
};

/// u = m (e^{a|e|} - d) |e| sign(e), e = r - c.
struct ExpGainSet {
  double m = 0.0;
  double a = 0.0;
  double c = 0.0;
  double d = 0.0;
};

/// Long-range gains per channel for one target class.
struct ExpGainTable {
  ExpGainSet pitch;
  ExpGainSet roll;
  ExpGainSet heave;

  static ExpGainTable ship();
  static ExpGainTable bar();
  /// Setpoints scaled from the 1280 x 720 reference to another resolution.
  ExpGainTable rescaled(int width, int height) const;
};

/// `literal_form` evaluates the negative branch as -m (e^{a e} - d) e.
double exp_control(double r, const ExpGainSet& gains, bool literal_form = false);
double exp_control_raw(double r, const ExpGainSet& gains, bool literal_form = false);

struct ProbPidGainSet {
  double kp = 0.0;
  double ki = 0.0;
  double b = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};

struct ProbPidTable {
  ProbPidGainSet pitch{7.5, 0.05, 4.5, 0.02, 0.04};
  ProbPidGainSet roll{7.5, 0.01, 8.5, 0.0, 0.04};
  ProbPidGainSet heave{15.0, 0.01, 7.0, 0.0, 0.02};
  ProbPidGainSet yaw{5.5, 0.05, 1.75, 0.0, 5.0};
};

/// K_D = b exp(-(de - mu)^2 / (2 sigma^2)).
double gaussian_derivative_gain(double de, const ProbPidGainSet& gains);

struct PidChannelState {
  double previous_error = 0.0;
  double integral = 0.0;
  double last_time = 0.0;
  bool has_previous = false;
};

struct PidTerms {
  double p = 0.0;
  double i = 0.0;
  double d = 0.0;
  double raw() const { return p + i + d; }
};

/// One update; the first step after a reset differences against zero.
/// The integral is clamped so |K_I * sum| stays within `integral_limit`.
/// Throws NonPositiveDt.
std::pair<double, PidChannelState> prob_pid_step(const PidChannelState& state, double e, double dt,
                                                 const ProbPidGainSet& gains, double integral_limit = 50.0,
                                                 PidTerms* terms = nullptr);

/// Inclusive 0.35 m box on forward and sideward pad offsets.
bool landing_trigger(double forward_offset, double side_offset, double half_width = 0.35);

}  // namespace shipland
