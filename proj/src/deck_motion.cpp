#include "shipland/deck_motion.hpp"

#include <algorithm>
#include <cmath>

#include "shipland/error.hpp"

namespace shipland {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double sum_components(double t, const std::vector<SineComponent>& components) {
  double sum = 0.0;
  for (const auto& c : components) {
    sum += c.amplitude * std::sin(two_pi * t / c.period_s + deg2rad(c.phase_deg));
  }
  return sum;
}

void validate_axis(const std::vector<SineComponent>& components, const char* axis) {
  for (const auto& c : components) {
    if (!(c.period_s > 0.0) || !std::isfinite(c.amplitude) || !std::isfinite(c.phase_deg)) {
      throw Error(ErrorCode::ConfigInvalid, std::string("motion component on ") + axis +
                                                " needs a positive period and finite amplitude");
    }
  }
}

}  // namespace

DeckState clamp_to_limits(const DeckState& s) {
  return {std::clamp(s.roll_deg, -DeckLimits::roll_deg, DeckLimits::roll_deg),
          std::clamp(s.pitch_deg, -DeckLimits::pitch_deg, DeckLimits::pitch_deg),
          std::clamp(s.yaw_deg, -DeckLimits::yaw_deg, DeckLimits::yaw_deg),
          std::clamp(s.surge_m, -DeckLimits::surge_m, DeckLimits::surge_m),
          std::clamp(s.sway_m, -DeckLimits::sway_m, DeckLimits::sway_m),
          std::clamp(s.heave_m, -DeckLimits::heave_m, DeckLimits::heave_m)};
}

bool within_limits(const DeckState& s) {
  return std::abs(s.roll_deg) <= DeckLimits::roll_deg && std::abs(s.pitch_deg) <= DeckLimits::pitch_deg &&
         std::abs(s.yaw_deg) <= DeckLimits::yaw_deg && std::abs(s.surge_m) <= DeckLimits::surge_m &&
         std::abs(s.sway_m) <= DeckLimits::sway_m && std::abs(s.heave_m) <= DeckLimits::heave_m;
}

void MotionProfile::validate() const {
  validate_axis(roll, "roll");
  validate_axis(pitch, "pitch");
  validate_axis(yaw, "yaw");
  validate_axis(surge, "surge");
  validate_axis(sway, "sway");
  validate_axis(heave, "heave");
}

bool MotionProfile::empty() const {
  return roll.empty() && pitch.empty() && yaw.empty() && surge.empty() && sway.empty() && heave.empty();
}

double MotionProfile::longest_period() const {
  double longest = 0.0;
  for (const auto* axis : {&roll, &pitch, &yaw, &surge, &sway, &heave}) {
    for (const auto& c : *axis) longest = std::max(longest, c.period_s);
  }
  return longest;
}

DeckState natops_motion(double t, const NatopsParams& p) {
  DeckState s;
  s.roll_deg = p.roll_amplitude_deg * std::sin(two_pi * t / p.roll_period_s + deg2rad(p.roll_phase_deg));
  s.pitch_deg = p.pitch_amplitude_deg * std::sin(two_pi * t / p.pitch_period_s + deg2rad(p.pitch_phase_deg));
  return s;
}

MotionProfile natops_profile(const NatopsParams& p) {
  MotionProfile profile;
  profile.roll.push_back({p.roll_amplitude_deg, p.roll_period_s, p.roll_phase_deg});
  profile.pitch.push_back({p.pitch_amplitude_deg, p.pitch_period_s, p.pitch_phase_deg});
  return profile;
}

MotionProfile perry_surrogate_profile() {
  MotionProfile p;
  p.roll = {{7.0, 10.1, 0.0}, {3.0, 4.3, 40.0}};
  p.pitch = {{3.5, 6.5, 15.0}, {1.5, 3.1, 70.0}};
  p.yaw = {{2.0, 12.7, 30.0}, {1.0, 5.3, 110.0}};
  p.surge = {{0.10, 8.2, 0.0}, {0.04, 3.7, 50.0}};
  p.sway = {{0.10, 9.4, 20.0}, {0.04, 4.1, 90.0}};
  p.heave = {{0.15, 7.1, 0.0}, {0.06, 3.3, 60.0}};
  return p;
}

DeckState multisine_motion(double t, const MotionProfile& profile) {
  DeckState s;
  s.roll_deg = sum_components(t, profile.roll);
  s.pitch_deg = sum_components(t, profile.pitch);
  s.yaw_deg = sum_components(t, profile.yaw);
  s.surge_m = sum_components(t, profile.surge);
  s.sway_m = sum_components(t, profile.sway);
  s.heave_m = sum_components(t, profile.heave);
  return clamp_to_limits(s);
}

void ShipPath::validate() const {
  for (std::size_t i = 0; i < speed_schedule.size(); ++i) {
    const auto& k = speed_schedule[i];
    if (k.speed_mps < 0.0 || k.speed_mps > max_speed_mps || !std::isfinite(k.t_s)) {
      throw Error(ErrorCode::ConfigInvalid, "ship speed must lie in [0, 4.5] m/s");
    }
    if (i > 0 && !(k.t_s > speed_schedule[i - 1].t_s)) {
      throw Error(ErrorCode::ConfigInvalid, "speed knots must have increasing times");
    }
  }
  if (kind == PathKind::Turn90 && !(turn_radius_m > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "turn radius must be positive");
  }
  if (kind == PathKind::SPattern && !(weave_wavelength_m > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "weave wavelength must be positive");
  }
  if (leg_length_m < 0.0) throw Error(ErrorCode::ConfigInvalid, "leg length must be non-negative");
}

double ShipPath::speed_at(double t) const {
  if (kind == PathKind::Stationary || speed_schedule.empty()) return 0.0;
  if (t <= speed_schedule.front().t_s) return speed_schedule.front().speed_mps;
  for (std::size_t i = 1; i < speed_schedule.size(); ++i) {
    const auto& a = speed_schedule[i - 1];
    const auto& b = speed_schedule[i];
    if (t <= b.t_s) return a.speed_mps + (b.speed_mps - a.speed_mps) * (t - a.t_s) / (b.t_s - a.t_s);
  }
  return speed_schedule.back().speed_mps;
}

double ShipPath::distance_at(double t) const {
  if (kind == PathKind::Stationary || speed_schedule.empty() || t <= 0.0) return 0.0;
  // Exact integral of the piecewise-linear schedule.
  double s = 0.0;
  double prev_t = 0.0;
  double prev_v = speed_at(0.0);
  auto add_segment = [&](double t1) {
    const double v1 = speed_at(t1);
    s += 0.5 * (prev_v + v1) * (t1 - prev_t);
    prev_t = t1;
    prev_v = v1;
  };
  for (const auto& k : speed_schedule) {
    if (k.t_s <= prev_t) continue;
    if (k.t_s >= t) break;
    add_segment(k.t_s);
  }
  add_segment(t);
  return s;
}

double ShipPath::heading_at_distance(double s) const {
  switch (kind) {
    case PathKind::Stationary:
    case PathKind::Straight:
      return heading0_deg;
    case PathKind::Turn90: {
      if (s <= leg_length_m) return heading0_deg;
      const double arc = turn_radius_m * std::numbers::pi / 2.0;
      const double along = std::min(s - leg_length_m, arc);
      return heading0_deg + rad2deg(along / turn_radius_m);
    }
    case PathKind::SPattern: {
      if (s <= leg_length_m) return heading0_deg;
      return heading0_deg + weave_amplitude_deg * std::sin(2.0 * std::numbers::pi * (s - leg_length_m) /
                                                           weave_wavelength_m);
    }
  }
  return heading0_deg;
}

Pose ShipState::pose() const {
  return Pose::from_euler(Vec3(x_m, y_m, 0.0), {heading_deg, 0.0, 0.0});
}

ShipTrajectory::ShipTrajectory(ShipPath path, double horizon_s) : path_(std::move(path)) {
  path_.validate();
  if (path_.kind != PathKind::SPattern) return;
  const double s_max = path_.distance_at(std::max(horizon_s, 0.0)) + step_m_;
  const auto n = static_cast<std::size_t>(std::ceil(s_max / step_m_)) + 1;
  table_.reserve(n);
  Vec2 p(path_.x0_m, path_.y0_m);
  table_.push_back(p);
  auto dir = [&](double s) {
    const double h = deg2rad(path_.heading_at_distance(s));
    return Vec2(std::cos(h), std::sin(h));
  };
  for (std::size_t k = 1; k < n; ++k) {
    const double s0 = (k - 1) * step_m_;
    p += step_m_ / 6.0 * (dir(s0) + 4.0 * dir(s0 + step_m_ / 2.0) + dir(s0 + step_m_));
    table_.push_back(p);
  }
}

Vec2 ShipTrajectory::position_at_distance(double s) const {
  const Vec2 origin(path_.x0_m, path_.y0_m);
  const double h0 = deg2rad(path_.heading0_deg);
  const Vec2 d0(std::cos(h0), std::sin(h0));
  switch (path_.kind) {
    case PathKind::Stationary:
    case PathKind::Straight:
      return origin + s * d0;
    case PathKind::Turn90: {
      const double leg = path_.leg_length_m;
      if (s <= leg) return origin + s * d0;
      const double r = path_.turn_radius_m;
      const Vec2 left(-d0.y(), d0.x());
      const Vec2 center = origin + leg * d0 + r * left;
      const double arc = r * std::numbers::pi / 2.0;
      const double phi = std::min(s - leg, arc) / r;
      const Vec2 on_arc = center + r * Vec2(std::sin(h0 + phi), -std::cos(h0 + phi));
      if (s <= leg + arc) return on_arc;
      return on_arc + (s - leg - arc) * left;
    }
    case PathKind::SPattern: {
      const double idx = s / step_m_;
      auto k = static_cast<std::size_t>(std::floor(idx));
      if (k + 1 >= table_.size()) k = table_.size() - 1;
      const double s0 = k * step_m_;
      const double rem = s - s0;
      auto dir = [&](double q) {
        const double h = deg2rad(path_.heading_at_distance(q));
        return Vec2(std::cos(h), std::sin(h));
      };
      // Simpson over the partial interval keeps the table spacing invisible.
      return table_[k] + rem / 6.0 * (dir(s0) + 4.0 * dir(s0 + rem / 2.0) + dir(s));
    }
  }
  return origin;
}

ShipState ShipTrajectory::state(double t) const {
  const double s = path_.distance_at(std::max(t, 0.0));
  const Vec2 p = position_at_distance(s);
  ShipState out;
  out.x_m = p.x();
  out.y_m = p.y();
  out.heading_deg = path_.heading_at_distance(s);
  out.speed_mps = path_.speed_at(t);
  return out;
}

ShipState ship_state(double t, const ShipPath& path) { return ShipTrajectory(path, t).state(t); }

void ShipGeometry::validate() const {
  if (!(deck_size_m > 0.0) || !(width_m > 0.0) || !(height_m > 0.0) || !(length_m > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "ship dimensions must be positive");
  }
  if (!(bar_standoff() > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "bar must be mounted ahead of the deck centre");
  }
}

Pose bar_pose(const ShipState& ship, const DeckState& /*deck*/, const ShipGeometry& geometry) {
  const Pose ship_pose = ship.pose();
  return {ship_pose.rotation(), ship_pose.apply(geometry.bar_center)};
}

Pose deck_pose_world(const ShipState& ship, const DeckState& deck, const ShipGeometry& geometry) {
  const Vec3 offset = geometry.deck_center + Vec3(deck.surge_m, deck.sway_m, deck.heave_m);
  const Pose local = Pose::from_euler(offset, {deck.yaw_deg, deck.pitch_deg, deck.roll_deg});
  return compose(ship.pose(), local);
}

std::optional<double> deck_surface_height(const Pose& deck_pose, double half_size, double x, double y) {
  const Vec3 n = deck_pose.rotation().col(2);
  const Vec3& c = deck_pose.position();
  if (std::abs(n.z()) < 1e-9) return std::nullopt;
  const double z = c.z() - (n.x() * (x - c.x()) + n.y() * (y - c.y())) / n.z();
  const Vec3 local = to_deck_frame(deck_pose, Vec3(x, y, z));
  if (std::abs(local.x()) > half_size || std::abs(local.y()) > half_size) return std::nullopt;
  return z;
}

Vec3 to_deck_frame(const Pose& deck_pose, const Vec3& world_point) {
  return deck_pose.rotation().transpose() * (world_point - deck_pose.position());
}

}  // namespace shipland
