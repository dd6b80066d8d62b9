#include "shipland/episode.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <random>

#include "shipland/error.hpp"
#include "shipland/kalman.hpp"
#include "shipland/pnp.hpp"
#include "shipland/render.hpp"

namespace shipland {

const char* to_string(TerminalEvent e) {
  switch (e) {
    case TerminalEvent::Landed: return "landed";
    case TerminalEvent::Timeout: return "timeout";
    case TerminalEvent::Abort: return "abort";
  }
  return "unknown";
}

namespace {

constexpr double kNever = -std::numeric_limits<double>::infinity();

struct CornerDelivery {
  double at;
  RelativeState filtered;
  double raw_yaw_deg;
  PadOffset pad;
  bool landing;
};

struct MlDelivery {
  double at;
  std::optional<Detection> bar;
  std::optional<Detection> ship;
};

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t which) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(which)};
  return std::mt19937_64(seq);
}

/// Per-axis Kalman smoothing of the relative state.
struct TrackFilter {
  KalmanConfig cfg;
  KalmanState x, y, z, yaw;

  explicit TrackFilter(const KalmanConfig& c)
      : cfg(c), x(make_kalman(c.q, c.r)), y(x), z(x), yaw(x) {}

  void reset() { x = y = z = yaw = make_kalman(cfg.q, cfg.r); }

  RelativeState apply(const RelativeState& raw) {
    RelativeState out = raw;
    auto run = [&](bool on, KalmanState& k, double& value) {
      if (!on) return;
      k = kalman_update(k, value, cfg.literal_gain_form);
      value = k.ce;
    };
    run(cfg.filter_x, x, out.x);
    run(cfg.filter_y, y, out.y);
    run(cfg.filter_z, z, out.z);
    run(cfg.filter_yaw, yaw, out.yaw_deg);
    return out;
  }
};

}  // namespace

EpisodeLog run_episode(const EpisodeConfig& cfg_in) {
  EpisodeConfig cfg = cfg_in;
  cfg.sync_derived();
  cfg.validate();
  const SimConfig& sim = cfg.sim;
  const bool noisy = cfg.noise.enabled;

  auto rng_image = stream(sim.seed, 1);
  auto rng_detect = stream(sim.seed, 2);
  auto rng_mag = stream(sim.seed, 3);
  auto rng_jitter = stream(sim.seed, 4);
  std::uniform_real_distribution<double> jitter(1.0 - cfg.noise.cadence_jitter, 1.0 + cfg.noise.cadence_jitter);
  std::normal_distribution<double> unit(0.0, 1.0);
  auto next_period = [&](double nominal) { return noisy ? nominal * jitter(rng_jitter) : nominal; };

  DetectorParams det_params = cfg.detector;
  det_params.center_noise_px = cfg.noise.detector_center_px;
  det_params.area_noise = cfg.noise.detector_area;
  RenderStyle style;
  style.noise_sigma = noisy ? cfg.noise.image_sigma : 0.0;
  const auto object_points_arr = cfg.cue.object_points();
  const std::vector<Vec3> object_points(object_points_arr.begin(), object_points_arr.end());

  const ShipTrajectory trajectory(cfg.path, sim.max_time_s + 1.0);
  WindModel wind(cfg.wind);
  ModeMachine machine(sim.modes);
  Controllers controllers(cfg.gains);
  TrackFilter filter(cfg.kalman);

  VehicleState vehicle;
  vehicle.position = sim.initial_position;
  vehicle.heading_deg = sim.initial_heading_deg;

  EpisodeLog log;
  log.seed = sim.seed;

  PerceptionSummary perception;
  double corner_delivered = kNever, bar_delivered = kNever, ship_delivered = kNever;
  std::deque<CornerDelivery> corner_queue;
  std::deque<MlDelivery> ml_queue;
  double next_ml = 0.0;
  double next_corner = 0.0;
  double last_corner_success = kNever;
  std::optional<RelativeState> previous_raw;
  std::optional<Pose> previous_pose;
  std::optional<CornerDelivery> latest_corner;

  ControlVector command;
  FlightMode mode = machine.mode();
  const double half_deck = cfg.ship.deck_size_m / 2.0;
  const auto steps = static_cast<long>(std::ceil(sim.max_time_s / sim.dt - 1e-9));
  bool finished = false;

  for (long k = 0; k < steps && !finished; ++k) {
    const double t = k * sim.dt;
    const ShipState ship = trajectory.state(t);
    const DeckState deck = cfg.motion.at(t);
    const Pose bar = bar_pose(ship, deck, cfg.ship);
    const Pose cue = cue_pose_world(bar);
    const Pose camera = camera_pose_world(vehicle.position, vehicle.heading_deg);

    if (t >= next_ml - 1e-9) {
      MlDelivery d{t + sim.ml_latency_s, std::nullopt, std::nullopt};
      DetectionTarget ship_target{ObjectClass::Ship,
                                  compose(ship.pose(), Pose(cue_mount_rotation(), cfg.ship.aft_face_center)),
                                  cfg.ship.width_m, cfg.ship.height_m};
      DetectionTarget bar_target{ObjectClass::Bar, cue, cfg.cue.total_width(), cfg.cue.rectangle_height};
      d.ship = mock_detect(ship_target, camera, cfg.camera, t, det_params, noisy ? &rng_detect : nullptr);
      d.bar = mock_detect(bar_target, camera, cfg.camera, t, det_params, noisy ? &rng_detect : nullptr);
      if (d.ship || d.bar) ml_queue.push_back(d);
      next_ml = t + next_period(sim.ml_period_s);
    }

    if (t >= next_corner - 1e-9) {
      const bool engaged = t - last_corner_success <= sim.corner_engaged_hold_s ||
                           mode == FlightMode::VerticalLanding || mode == FlightMode::CornerTracking;
      bool success = false;
      bool visible = true;
      for (const Vec3& c : cue_corners_world(cfg.cue, cue)) {
        const Vec3 pc = camera.rotation().transpose() * (c - camera.position());
        visible = visible && pc.z() > 0.05;
      }
      if (visible) {
        ++log.corner_attempts;
        try {
          const RenderResult frame = render_cue(camera, cfg.camera, cfg.cue, cue, style, &rng_image);
          DebugSink sink;
          if (!sim.debug_dir.empty() && sim.debug_every > 0 && (log.corner_attempts - 1) % sim.debug_every == 0) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%05d", log.corner_attempts - 1);
            sink = {sim.debug_dir, name};
          }
          const bool recent = t - last_corner_success <= sim.corner_engaged_hold_s;
          VisionParams vision = cfg.vision;
          if (recent) vision.min_rect_height_px = vision.track_min_rect_height_px;
          const CornerSet corners = detect_cue_corners(frame.image, t, vision, sink);
          const PnPResult pnp =
              solve_pnp(std::vector<Pixel>(corners.corners.begin(), corners.corners.end()), object_points,
                        cfg.camera, recent ? previous_pose : std::nullopt);
          if (pnp.converged) {
            const RelativeState raw = pose_to_relative_state(pnp, recent ? previous_raw : std::nullopt, t);
            if (!recent) filter.reset();
            const RelativeState filtered = filter.apply(raw);
            const PadOffset pad = pad_offset(filtered, cfg.gains.standoff_m);
            corner_queue.push_back({t + sim.corner_latency_s, filtered, raw.yaw_deg, pad,
                                    landing_trigger(pad.forward, pad.left, sim.landing_half_width_m)});
            previous_raw = raw;
            previous_pose = pnp.pose;
            last_corner_success = t;
            ++log.corner_successes;
            success = true;
          }
        } catch (const Error&) {
          // A failed frame simply produces no sample.
        }
      }
      next_corner = t + next_period(success || engaged ? sim.corner_period_s : sim.corner_idle_period_s);
    }

    while (!corner_queue.empty() && corner_queue.front().at <= t + 1e-9) {
      latest_corner = corner_queue.front();
      corner_queue.pop_front();
      perception.corner = latest_corner->filtered;
      perception.landing_condition = latest_corner->landing;
      ++perception.corner_seq;
      corner_delivered = latest_corner->at;
    }
    while (!ml_queue.empty() && ml_queue.front().at <= t + 1e-9) {
      const MlDelivery& d = ml_queue.front();
      if (d.bar) {
        perception.bar = d.bar;
        ++perception.bar_seq;
        bar_delivered = d.at;
        ++log.ml_detections;
      }
      if (d.ship) {
        perception.ship = d.ship;
        ++perception.ship_seq;
        ship_delivered = d.at;
        ++log.ml_detections;
      }
      ml_queue.pop_front();
    }
    perception.corner_age = t - corner_delivered;
    perception.bar_age = t - bar_delivered;
    perception.ship_age = t - ship_delivered;
    perception.height_above_deck = vehicle.position.z() - cfg.ship.deck_center.z();
    perception.magnetometer_heading_deg =
        wrap_deg(vehicle.heading_deg + (noisy ? cfg.noise.magnetometer_deg * unit(rng_mag) : 0.0));
    perception.ship_heading_deg = ship.heading_deg;

    const FlightMode next_mode = machine.step(perception);
    if (next_mode != mode) {
      log.transitions.push_back({t, mode_number(mode), mode_number(next_mode)});
      log.transition_ranges.push_back((vehicle.position - bar.position()).norm());
      mode = next_mode;
    }
    command = select_command(mode, perception, controllers, command, t);

    TickRecord rec;
    rec.t = t;
    rec.mode = mode_number(mode);
    rec.cmd = command;
    rec.position = vehicle.position;
    rec.heading_deg = vehicle.heading_deg;
    rec.velocity = vehicle.velocity;
    rec.ship_x = ship.x_m;
    rec.ship_y = ship.y_m;
    rec.ship_heading_deg = ship.heading_deg;
    rec.deck_roll_deg = deck.roll_deg;
    rec.deck_pitch_deg = deck.pitch_deg;
    rec.deck_heave_m = deck.heave_m;
    {
      const Pose ship_pose = ship.pose();
      const Vec3 rel = ship_pose.rotation().transpose() * (vehicle.position - ship_pose.apply(cfg.ship.deck_center));
      rec.true_forward_m = rel.x();
      rec.true_left_m = rel.y();
      rec.true_height_m = rel.z();
      rec.true_rel_yaw_deg = wrap_deg(ship.heading_deg - vehicle.heading_deg);
    }
    if (latest_corner) {
      rec.has_estimate = true;
      rec.est_x = latest_corner->filtered.x;
      rec.est_y = latest_corner->filtered.y;
      rec.est_z = latest_corner->filtered.z;
      rec.est_yaw_raw_deg = latest_corner->raw_yaw_deg;
      rec.est_yaw_deg = latest_corner->filtered.yaw_deg;
      rec.est_forward_m = latest_corner->pad.forward;
      rec.est_left_m = latest_corner->pad.left;
    }
    rec.bar_detected = perception.bar.has_value() && perception.bar_age <= sim.modes.ml_fresh_s;
    rec.ship_detected = perception.ship.has_value() && perception.ship_age <= sim.modes.ml_fresh_s;
    log.ticks.push_back(rec);

    const Vec3 disturbance = wind.step(t, sim.dt);
    vehicle = vehicle_step(vehicle, command, disturbance, sim.dt, cfg.vehicle);

    const double t_next = t + sim.dt;
    const ShipState ship_next = trajectory.state(t_next);
    const DeckState deck_next = cfg.motion.at(t_next);
    const Pose deck_pose = deck_pose_world(ship_next, deck_next, cfg.ship);
    const auto surface = deck_surface_height(deck_pose, half_deck, vehicle.position.x(), vehicle.position.y());
    if (surface && vehicle.position.z() <= *surface) {
      log.end_time = t_next;
      if (mode == FlightMode::VerticalLanding) {
        const Vec3 local = to_deck_frame(deck_pose, vehicle.position);
        log.terminal = TerminalEvent::Landed;
        log.terminal_reason = "touchdown";
        log.touchdown_x = local.x();
        log.touchdown_y = local.y();
        log.touchdown_roll_deg = deck_next.roll_deg;
        log.touchdown_pitch_deg = deck_next.pitch_deg;
        log.inside_box = landing_trigger(local.x(), local.y(), sim.landing_half_width_m);
      } else {
        log.terminal = TerminalEvent::Abort;
        log.terminal_reason = "deck contact outside vertical landing";
      }
      finished = true;
    } else if (vehicle.position.z() <= 0.0) {
      log.end_time = t_next;
      log.terminal = TerminalEvent::Abort;
      log.terminal_reason = "reached sea level";
      finished = true;
    }
  }
  if (!finished) {
    log.terminal = TerminalEvent::Timeout;
    log.terminal_reason = "time limit";
    log.end_time = steps * sim.dt;
  }
  return log;
}

}  // namespace shipland
