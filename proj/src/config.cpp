#include "shipland/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "shipland/error.hpp"

namespace shipland {

using nlohmann::json;

DeckState MotionConfig::at(double t) const {
  switch (kind) {
    case MotionKind::None: return {};
    case MotionKind::Natops: return natops_motion(t + time_offset_s, natops);
    case MotionKind::Multisine: return multisine_motion(t + time_offset_s, profile);
  }
  return {};
}

void EpisodeConfig::validate() const {
  camera.validate();
  cue.validate();
  ship.validate();
  motion.profile.validate();
  if (motion.kind == MotionKind::Natops &&
      (!(motion.natops.roll_period_s > 0.0) || !(motion.natops.pitch_period_s > 0.0))) {
    throw Error(ErrorCode::ConfigInvalid, "motion periods must be positive");
  }
  path.validate();
  if (!(sim.dt > 0.0) || !(sim.max_time_s > 0.0)) throw Error(ErrorCode::ConfigInvalid, "sim.dt and sim.max_time_s must be positive");
  for (double p : {sim.ml_period_s, sim.corner_period_s, sim.corner_idle_period_s}) {
    if (!(p >= sim.dt)) throw Error(ErrorCode::ConfigInvalid, "perception periods must be at least one tick");
  }
  if (sim.ml_latency_s < 0.0 || sim.corner_latency_s < 0.0) throw Error(ErrorCode::ConfigInvalid, "latency must be non-negative");
  if (noise.cadence_jitter < 0.0 || noise.cadence_jitter >= 1.0) throw Error(ErrorCode::ConfigInvalid, "cadence jitter must lie in [0, 1)");
  if (wind.mean.norm() > wind.max_speed || wind.max_speed > 9.0 + 1e-12) {
    throw Error(ErrorCode::ConfigInvalid, "wind must not exceed 9 m/s");
  }
  if (!(vehicle.tau > 0.0) || !(vehicle.v_max_horizontal > 0.0) || !(vehicle.v_max_vertical > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "vehicle parameters must be positive");
  }
  for (const auto* g : {&gains.close.pitch, &gains.close.roll, &gains.close.heave, &gains.close.yaw, &gains.yaw_long}) {
    if (!(g->sigma > 0.0) || g->kp < 0.0 || g->ki < 0.0 || g->b < 0.0) {
      throw Error(ErrorCode::ConfigInvalid, "PID gains need sigma > 0 and non-negative K_P, K_I, b");
    }
  }
  for (const auto* t : {&gains.ship, &gains.bar}) {
    for (const auto* g : {&t->pitch, &t->roll, &t->heave}) {
      if (g->m < 0.0 || !std::isfinite(g->c)) throw Error(ErrorCode::ConfigInvalid, "exponential gains need m >= 0");
    }
  }
  if (!(kalman.q > 0.0) || !(kalman.r > 0.0)) throw Error(ErrorCode::ConfigInvalid, "Kalman noise terms must be positive");
  if (vision.morph_radius < 1) throw Error(ErrorCode::ConfigInvalid, "vision.morph_radius must be at least 1");
  if (vision.track_min_rect_height_px < 1 || vision.track_min_rect_height_px > vision.min_rect_height_px) {
    throw Error(ErrorCode::ConfigInvalid, "vision.track_min_rect_px must lie in [1, min_rect_px]");
  }

  const Vec3 aft = ship.aft_face_center;
  const double range = std::hypot(sim.initial_position.x() - (path.x0_m + aft.x()), sim.initial_position.y() - path.y0_m);
  if (range > 250.0 && !sim.search_scenario) {
    throw Error(ErrorCode::ConfigInvalid, "initial range beyond 250 m needs sim.search_scenario = true");
  }
}

void EpisodeConfig::sync_derived() {
  gains.image_width = camera.width;
  gains.image_height = camera.height;
  gains.corner_period_s = sim.corner_period_s;
  gains.ml_period_s = sim.ml_period_s;
  gains.standoff_m = ship.bar_standoff();
  detector.bar_reference_area_m2 = cue.total_width() * cue.rectangle_height;
}

namespace {

void check_keys(const json& j, const char* section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, std::string(section) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::ConfigInvalid, "unknown key " + std::string(section) + "." + key);
  }
}

template <typename T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void get_vec3(const json& j, const char* key, Vec3& out) {
  if (!j.contains(key)) return;
  const auto v = j.at(key).get<std::vector<double>>();
  if (v.size() != 3) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " needs three components");
  out = Vec3(v[0], v[1], v[2]);
}

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

const char* motion_kind_name(MotionKind k) {
  switch (k) {
    case MotionKind::None: return "none";
    case MotionKind::Natops: return "natops";
    case MotionKind::Multisine: return "multisine";
  }
  return "none";
}

MotionKind motion_kind_from(const std::string& s) {
  if (s == "none") return MotionKind::None;
  if (s == "natops") return MotionKind::Natops;
  if (s == "multisine") return MotionKind::Multisine;
  throw Error(ErrorCode::ConfigInvalid, "unknown motion kind " + s);
}

const char* path_kind_name(PathKind k) {
  switch (k) {
    case PathKind::Stationary: return "stationary";
    case PathKind::Straight: return "straight";
    case PathKind::SPattern: return "s_pattern";
    case PathKind::Turn90: return "turn_90";
  }
  return "stationary";
}

PathKind path_kind_from(const std::string& s) {
  if (s == "stationary") return PathKind::Stationary;
  if (s == "straight") return PathKind::Straight;
  if (s == "s_pattern") return PathKind::SPattern;
  if (s == "turn_90") return PathKind::Turn90;
  throw Error(ErrorCode::ConfigInvalid, "unknown path kind " + s);
}

json components_json(const std::vector<SineComponent>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"amplitude", c.amplitude}, {"period_s", c.period_s}, {"phase_deg", c.phase_deg}});
  return a;
}

std::vector<SineComponent> components_from(const json& a) {
  std::vector<SineComponent> out;
  for (const auto& c : a) {
    check_keys(c, "motion.profile component", {"amplitude", "period_s", "phase_deg"});
    SineComponent s;
    get(c, "amplitude", s.amplitude);
    get(c, "period_s", s.period_s);
    get(c, "phase_deg", s.phase_deg);
    out.push_back(s);
  }
  return out;
}

json exp_json(const ExpGainSet& g) { return {{"m", g.m}, {"a", g.a}, {"c", g.c}, {"d", g.d}}; }

void exp_from(const json& j, const char* name, ExpGainSet& g) {
  check_keys(j, name, {"m", "a", "c", "d"});
  get(j, "m", g.m);
  get(j, "a", g.a);
  get(j, "c", g.c);
  get(j, "d", g.d);
}

json exp_table_json(const ExpGainTable& t) {
  return {{"pitch", exp_json(t.pitch)}, {"roll", exp_json(t.roll)}, {"heave", exp_json(t.heave)}};
}

void exp_table_from(const json& j, const char* name, ExpGainTable& t) {
  check_keys(j, name, {"pitch", "roll", "heave"});
  if (j.contains("pitch")) exp_from(j.at("pitch"), "exp pitch", t.pitch);
  if (j.contains("roll")) exp_from(j.at("roll"), "exp roll", t.roll);
  if (j.contains("heave")) exp_from(j.at("heave"), "exp heave", t.heave);
}

json pid_json(const ProbPidGainSet& g) {
  return {{"kp", g.kp}, {"ki", g.ki}, {"b", g.b}, {"mu", g.mu}, {"sigma", g.sigma}};
}

void pid_from(const json& j, const char* name, ProbPidGainSet& g) {
  check_keys(j, name, {"kp", "ki", "b", "mu", "sigma"});
  get(j, "kp", g.kp);
  get(j, "ki", g.ki);
  get(j, "b", g.b);
  get(j, "mu", g.mu);
  get(j, "sigma", g.sigma);
}

EpisodeConfig from_json(const json& root) {
  EpisodeConfig c;
  check_keys(root, "config",
             {"camera", "cue", "ship", "motion", "path", "gains", "noise", "wind", "vehicle", "vision", "detector",
              "kalman", "sim"});

  if (root.contains("camera")) {
    const auto& j = root.at("camera");
    check_keys(j, "camera", {"focal_px", "cx", "cy", "width", "height"});
    get(j, "focal_px", c.camera.focal_px);
    get(j, "cx", c.camera.cx);
    get(j, "cy", c.camera.cy);
    get(j, "width", c.camera.width);
    get(j, "height", c.camera.height);
  }
  if (root.contains("cue")) {
    const auto& j = root.at("cue");
    check_keys(j, "cue", {"rectangle_width", "rectangle_height", "gap"});
    get(j, "rectangle_width", c.cue.rectangle_width);
    get(j, "rectangle_height", c.cue.rectangle_height);
    get(j, "gap", c.cue.gap);
  }
  if (root.contains("ship")) {
    const auto& j = root.at("ship");
    check_keys(j, "ship", {"width_m", "height_m", "length_m", "deck_size_m", "deck_center", "bar_center", "aft_face_center"});
    get(j, "width_m", c.ship.width_m);
    get(j, "height_m", c.ship.height_m);
    get(j, "length_m", c.ship.length_m);
    get(j, "deck_size_m", c.ship.deck_size_m);
    get_vec3(j, "deck_center", c.ship.deck_center);
    get_vec3(j, "bar_center", c.ship.bar_center);
    get_vec3(j, "aft_face_center", c.ship.aft_face_center);
  }
  if (root.contains("motion")) {
    const auto& j = root.at("motion");
    check_keys(j, "motion", {"kind", "natops", "profile", "time_offset_s"});
    if (j.contains("kind")) c.motion.kind = motion_kind_from(j.at("kind").get<std::string>());
    get(j, "time_offset_s", c.motion.time_offset_s);
    if (j.contains("natops")) {
      const auto& n = j.at("natops");
      check_keys(n, "motion.natops",
                 {"roll_amplitude_deg", "roll_period_s", "pitch_amplitude_deg", "pitch_period_s", "roll_phase_deg",
                  "pitch_phase_deg"});
      get(n, "roll_amplitude_deg", c.motion.natops.roll_amplitude_deg);
      get(n, "roll_period_s", c.motion.natops.roll_period_s);
      get(n, "pitch_amplitude_deg", c.motion.natops.pitch_amplitude_deg);
      get(n, "pitch_period_s", c.motion.natops.pitch_period_s);
      get(n, "roll_phase_deg", c.motion.natops.roll_phase_deg);
      get(n, "pitch_phase_deg", c.motion.natops.pitch_phase_deg);
    }
    if (j.contains("profile")) {
      const auto& p = j.at("profile");
      if (p.is_string()) {
        if (p.get<std::string>() != "perry_surrogate") throw Error(ErrorCode::ConfigInvalid, "unknown profile preset");
        c.motion.profile = perry_surrogate_profile();
      } else {
        check_keys(p, "motion.profile", {"roll", "pitch", "yaw", "surge", "sway", "heave"});
        MotionProfile prof;
        if (p.contains("roll")) prof.roll = components_from(p.at("roll"));
        if (p.contains("pitch")) prof.pitch = components_from(p.at("pitch"));
        if (p.contains("yaw")) prof.yaw = components_from(p.at("yaw"));
        if (p.contains("surge")) prof.surge = components_from(p.at("surge"));
        if (p.contains("sway")) prof.sway = components_from(p.at("sway"));
        if (p.contains("heave")) prof.heave = components_from(p.at("heave"));
        c.motion.profile = prof;
      }
    }
  }
  if (root.contains("path")) {
    const auto& j = root.at("path");
    check_keys(j, "path",
               {"kind", "x0_m", "y0_m", "heading0_deg", "speed_schedule", "leg_length_m", "turn_radius_m",
                "weave_amplitude_deg", "weave_wavelength_m"});
    if (j.contains("kind")) c.path.kind = path_kind_from(j.at("kind").get<std::string>());
    get(j, "x0_m", c.path.x0_m);
    get(j, "y0_m", c.path.y0_m);
    get(j, "heading0_deg", c.path.heading0_deg);
    get(j, "leg_length_m", c.path.leg_length_m);
    get(j, "turn_radius_m", c.path.turn_radius_m);
    get(j, "weave_amplitude_deg", c.path.weave_amplitude_deg);
    get(j, "weave_wavelength_m", c.path.weave_wavelength_m);
    if (j.contains("speed_schedule")) {
      c.path.speed_schedule.clear();
      for (const auto& k : j.at("speed_schedule")) {
        const auto pair = k.get<std::vector<double>>();
        if (pair.size() != 2) throw Error(ErrorCode::ConfigInvalid, "speed knots are [t_s, speed_mps] pairs");
        c.path.speed_schedule.push_back({pair[0], pair[1]});
      }
    }
  }
  if (root.contains("gains")) {
    const auto& j = root.at("gains");
    check_keys(j, "gains",
               {"ship", "bar", "pitch", "roll", "heave", "yaw", "yaw_long", "exp_literal_form",
                "integral_limit", "descent_percent", "hold_timeout_s", "hover_bar_z_m"});
    if (j.contains("ship")) exp_table_from(j.at("ship"), "gains.ship", c.gains.ship);
    if (j.contains("bar")) exp_table_from(j.at("bar"), "gains.bar", c.gains.bar);
    if (j.contains("pitch")) pid_from(j.at("pitch"), "gains.pitch", c.gains.close.pitch);
    if (j.contains("roll")) pid_from(j.at("roll"), "gains.roll", c.gains.close.roll);
    if (j.contains("heave")) pid_from(j.at("heave"), "gains.heave", c.gains.close.heave);
    if (j.contains("yaw")) pid_from(j.at("yaw"), "gains.yaw", c.gains.close.yaw);
    if (j.contains("yaw_long")) pid_from(j.at("yaw_long"), "gains.yaw_long", c.gains.yaw_long);
    get(j, "exp_literal_form", c.gains.exp_literal_form);
    get(j, "integral_limit", c.gains.integral_limit);
    get(j, "descent_percent", c.gains.descent_percent);
    get(j, "hold_timeout_s", c.gains.hold_timeout_s);
    get(j, "hover_bar_z_m", c.gains.hover_bar_z_m);
  }
  if (root.contains("noise")) {
    const auto& j = root.at("noise");
    check_keys(j, "noise",
               {"enabled", "image_sigma", "detector_center_px", "detector_area", "magnetometer_deg", "cadence_jitter"});
    get(j, "enabled", c.noise.enabled);
    get(j, "image_sigma", c.noise.image_sigma);
    get(j, "detector_center_px", c.noise.detector_center_px);
    get(j, "detector_area", c.noise.detector_area);
    get(j, "magnetometer_deg", c.noise.magnetometer_deg);
    get(j, "cadence_jitter", c.noise.cadence_jitter);
  }
  if (root.contains("wind")) {
    const auto& j = root.at("wind");
    check_keys(j, "wind",
               {"mean", "gust_amplitude", "gust_period_s", "gust_direction", "max_speed", "rejection_tau_s", "coupling"});
    get_vec3(j, "mean", c.wind.mean);
    get(j, "gust_amplitude", c.wind.gust_amplitude);
    get(j, "gust_period_s", c.wind.gust_period_s);
    get_vec3(j, "gust_direction", c.wind.gust_direction);
    get(j, "max_speed", c.wind.max_speed);
    get(j, "rejection_tau_s", c.wind.rejection_tau_s);
    get(j, "coupling", c.wind.coupling);
  }
  if (root.contains("vehicle")) {
    const auto& j = root.at("vehicle");
    check_keys(j, "vehicle", {"v_max_horizontal", "v_max_vertical", "yaw_rate_max_dps", "tau"});
    get(j, "v_max_horizontal", c.vehicle.v_max_horizontal);
    get(j, "v_max_vertical", c.vehicle.v_max_vertical);
    get(j, "yaw_rate_max_dps", c.vehicle.yaw_rate_max_dps);
    get(j, "tau", c.vehicle.tau);
  }
  if (root.contains("vision")) {
    const auto& j = root.at("vision");
    check_keys(j, "vision",
               {"hsv_min", "hsv_max", "morph_radius", "min_component_area", "min_rect_px", "track_min_rect_px",
                "foerstner_iterations", "gradient_floor", "length_tolerance", "slope_tolerance"});
    if (j.contains("hsv_min")) {
      const auto v = j.at("hsv_min").get<std::vector<int>>();
      if (v.size() != 3) throw Error(ErrorCode::ConfigInvalid, "vision.hsv_min needs three values");
      c.vision.bounds.h_min = v[0];
      c.vision.bounds.s_min = v[1];
      c.vision.bounds.v_min = v[2];
    }
    if (j.contains("hsv_max")) {
      const auto v = j.at("hsv_max").get<std::vector<int>>();
      if (v.size() != 3) throw Error(ErrorCode::ConfigInvalid, "vision.hsv_max needs three values");
      c.vision.bounds.h_max = v[0];
      c.vision.bounds.s_max = v[1];
      c.vision.bounds.v_max = v[2];
    }
    get(j, "morph_radius", c.vision.morph_radius);
    get(j, "min_component_area", c.vision.min_component_area);
    get(j, "min_rect_px", c.vision.min_rect_height_px);
    get(j, "track_min_rect_px", c.vision.track_min_rect_height_px);
    get(j, "foerstner_iterations", c.vision.foerstner_iterations);
    get(j, "gradient_floor", c.vision.gradient_floor);
    get(j, "length_tolerance", c.vision.length_tolerance);
    get(j, "slope_tolerance", c.vision.slope_tolerance);
  }
  if (root.contains("detector")) {
    const auto& j = root.at("detector");
    check_keys(j, "detector", {"ship_reference_range_m", "ship_reference_area_m2", "bar_reference_range_m"});
    get(j, "ship_reference_range_m", c.detector.ship_reference_range_m);
    get(j, "ship_reference_area_m2", c.detector.ship_reference_area_m2);
    get(j, "bar_reference_range_m", c.detector.bar_reference_range_m);
  }
  if (root.contains("kalman")) {
    const auto& j = root.at("kalman");
    check_keys(j, "kalman", {"q", "r", "literal_gain_form", "filter_yaw", "filter_x", "filter_y", "filter_z"});
    get(j, "q", c.kalman.q);
    get(j, "r", c.kalman.r);
    get(j, "literal_gain_form", c.kalman.literal_gain_form);
    get(j, "filter_yaw", c.kalman.filter_yaw);
    get(j, "filter_x", c.kalman.filter_x);
    get(j, "filter_y", c.kalman.filter_y);
    get(j, "filter_z", c.kalman.filter_z);
  }
  if (root.contains("sim")) {
    const auto& j = root.at("sim");
    check_keys(j, "sim",
               {"seed", "dt", "max_time_s", "ml_period_s", "ml_latency_s", "corner_period_s", "corner_latency_s",
                "corner_idle_period_s", "corner_engaged_hold_s", "initial_position", "initial_heading_deg",
                "search_scenario", "landing_half_width_m", "hysteresis", "ml_fresh_s", "corner_fresh_s",
                "abort_height_m", "debug_dir", "debug_every"});
    get(j, "seed", c.sim.seed);
    get(j, "dt", c.sim.dt);
    get(j, "max_time_s", c.sim.max_time_s);
    get(j, "ml_period_s", c.sim.ml_period_s);
    get(j, "ml_latency_s", c.sim.ml_latency_s);
    get(j, "corner_period_s", c.sim.corner_period_s);
    get(j, "corner_latency_s", c.sim.corner_latency_s);
    get(j, "corner_idle_period_s", c.sim.corner_idle_period_s);
    get(j, "corner_engaged_hold_s", c.sim.corner_engaged_hold_s);
    get_vec3(j, "initial_position", c.sim.initial_position);
    get(j, "initial_heading_deg", c.sim.initial_heading_deg);
    get(j, "search_scenario", c.sim.search_scenario);
    get(j, "landing_half_width_m", c.sim.landing_half_width_m);
    get(j, "hysteresis", c.sim.modes.hysteresis);
    get(j, "ml_fresh_s", c.sim.modes.ml_fresh_s);
    get(j, "corner_fresh_s", c.sim.modes.corner_fresh_s);
    get(j, "abort_height_m", c.sim.modes.abort_height_m);
    get(j, "debug_dir", c.sim.debug_dir);
    get(j, "debug_every", c.sim.debug_every);
  }
  c.sync_derived();
  return c;
}

json to_json(const EpisodeConfig& c) {
  json root;
  root["camera"] = {{"focal_px", c.camera.focal_px}, {"cx", c.camera.cx}, {"cy", c.camera.cy},
                    {"width", c.camera.width}, {"height", c.camera.height}};
  root["cue"] = {{"rectangle_width", c.cue.rectangle_width}, {"rectangle_height", c.cue.rectangle_height},
                 {"gap", c.cue.gap}};
  root["ship"] = {{"width_m", c.ship.width_m},
                  {"height_m", c.ship.height_m},
                  {"length_m", c.ship.length_m},
                  {"deck_size_m", c.ship.deck_size_m},
                  {"deck_center", vec3_json(c.ship.deck_center)},
                  {"bar_center", vec3_json(c.ship.bar_center)},
                  {"aft_face_center", vec3_json(c.ship.aft_face_center)}};
  const auto& n = c.motion.natops;
  root["motion"] = {{"kind", motion_kind_name(c.motion.kind)},
                    {"time_offset_s", c.motion.time_offset_s},
                    {"natops",
                     {{"roll_amplitude_deg", n.roll_amplitude_deg},
                      {"roll_period_s", n.roll_period_s},
                      {"pitch_amplitude_deg", n.pitch_amplitude_deg},
                      {"pitch_period_s", n.pitch_period_s},
                      {"roll_phase_deg", n.roll_phase_deg},
                      {"pitch_phase_deg", n.pitch_phase_deg}}},
                    {"profile",
                     {{"roll", components_json(c.motion.profile.roll)},
                      {"pitch", components_json(c.motion.profile.pitch)},
                      {"yaw", components_json(c.motion.profile.yaw)},
                      {"surge", components_json(c.motion.profile.surge)},
                      {"sway", components_json(c.motion.profile.sway)},
                      {"heave", components_json(c.motion.profile.heave)}}}};
  json knots = json::array();
  for (const auto& k : c.path.speed_schedule) knots.push_back(json::array({k.t_s, k.speed_mps}));
  root["path"] = {{"kind", path_kind_name(c.path.kind)},
                  {"x0_m", c.path.x0_m},
                  {"y0_m", c.path.y0_m},
                  {"heading0_deg", c.path.heading0_deg},
                  {"speed_schedule", knots},
                  {"leg_length_m", c.path.leg_length_m},
                  {"turn_radius_m", c.path.turn_radius_m},
                  {"weave_amplitude_deg", c.path.weave_amplitude_deg},
                  {"weave_wavelength_m", c.path.weave_wavelength_m}};
  root["gains"] = {{"ship", exp_table_json(c.gains.ship)},
                   {"bar", exp_table_json(c.gains.bar)},
                   {"pitch", pid_json(c.gains.close.pitch)},
                   {"roll", pid_json(c.gains.close.roll)},
                   {"heave", pid_json(c.gains.close.heave)},
                   {"yaw", pid_json(c.gains.close.yaw)},
                   {"yaw_long", pid_json(c.gains.yaw_long)},
                   {"exp_literal_form", c.gains.exp_literal_form},
                   {"integral_limit", c.gains.integral_limit},
                   {"descent_percent", c.gains.descent_percent},
                   {"hold_timeout_s", c.gains.hold_timeout_s},
                   {"hover_bar_z_m", c.gains.hover_bar_z_m}};
  root["noise"] = {{"enabled", c.noise.enabled},
                   {"image_sigma", c.noise.image_sigma},
                   {"detector_center_px", c.noise.detector_center_px},
                   {"detector_area", c.noise.detector_area},
                   {"magnetometer_deg", c.noise.magnetometer_deg},
                   {"cadence_jitter", c.noise.cadence_jitter}};
  root["wind"] = {{"mean", vec3_json(c.wind.mean)},
                  {"gust_amplitude", c.wind.gust_amplitude},
                  {"gust_period_s", c.wind.gust_period_s},
                  {"gust_direction", vec3_json(c.wind.gust_direction)},
                  {"max_speed", c.wind.max_speed},
                  {"rejection_tau_s", c.wind.rejection_tau_s},
                  {"coupling", c.wind.coupling}};
  root["vehicle"] = {{"v_max_horizontal", c.vehicle.v_max_horizontal},
                     {"v_max_vertical", c.vehicle.v_max_vertical},
                     {"yaw_rate_max_dps", c.vehicle.yaw_rate_max_dps},
                     {"tau", c.vehicle.tau}};
  const auto& b = c.vision.bounds;
  root["vision"] = {{"hsv_min", {b.h_min, b.s_min, b.v_min}},
                    {"hsv_max", {b.h_max, b.s_max, b.v_max}},
                    {"morph_radius", c.vision.morph_radius},
                    {"min_component_area", c.vision.min_component_area},
                    {"min_rect_px", c.vision.min_rect_height_px},
                    {"track_min_rect_px", c.vision.track_min_rect_height_px},
                    {"foerstner_iterations", c.vision.foerstner_iterations},
                    {"gradient_floor", c.vision.gradient_floor},
                    {"length_tolerance", c.vision.length_tolerance},
                    {"slope_tolerance", c.vision.slope_tolerance}};
  root["detector"] = {{"ship_reference_range_m", c.detector.ship_reference_range_m},
                      {"ship_reference_area_m2", c.detector.ship_reference_area_m2},
                      {"bar_reference_range_m", c.detector.bar_reference_range_m}};
  root["kalman"] = {{"q", c.kalman.q},
                    {"r", c.kalman.r},
                    {"literal_gain_form", c.kalman.literal_gain_form},
                    {"filter_yaw", c.kalman.filter_yaw},
                    {"filter_x", c.kalman.filter_x},
                    {"filter_y", c.kalman.filter_y},
                    {"filter_z", c.kalman.filter_z}};
  root["sim"] = {{"seed", c.sim.seed},
                 {"dt", c.sim.dt},
                 {"max_time_s", c.sim.max_time_s},
                 {"ml_period_s", c.sim.ml_period_s},
                 {"ml_latency_s", c.sim.ml_latency_s},
                 {"corner_period_s", c.sim.corner_period_s},
                 {"corner_latency_s", c.sim.corner_latency_s},
                 {"corner_idle_period_s", c.sim.corner_idle_period_s},
                 {"corner_engaged_hold_s", c.sim.corner_engaged_hold_s},
                 {"initial_position", vec3_json(c.sim.initial_position)},
                 {"initial_heading_deg", c.sim.initial_heading_deg},
                 {"search_scenario", c.sim.search_scenario},
                 {"landing_half_width_m", c.sim.landing_half_width_m},
                 {"hysteresis", c.sim.modes.hysteresis},
                 {"ml_fresh_s", c.sim.modes.ml_fresh_s},
                 {"corner_fresh_s", c.sim.modes.corner_fresh_s},
                 {"abort_height_m", c.sim.modes.abort_height_m},
                 {"debug_dir", c.sim.debug_dir},
                 {"debug_every", c.sim.debug_every}};
  return root;
}

}  // namespace

EpisodeConfig parse_config(const std::string& json_text) {
  try {
    EpisodeConfig c = from_json(json::parse(json_text));
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
}

EpisodeConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const EpisodeConfig& cfg) { return to_json(cfg).dump(2); }

EpisodeConfig scenario_config(const std::string& name) {
  EpisodeConfig c;
  c.motion.kind = MotionKind::Natops;
  if (name == "natops") {
    c.sim.max_time_s = 60.0;
  } else if (name == "perry") {
    c.motion.kind = MotionKind::Multisine;
    c.motion.profile = perry_surrogate_profile();
    c.sim.max_time_s = 60.0;
  } else if (name == "longrange") {
    c.sim.initial_position = Vec3(-250.0, 3.0, 6.0);
    c.sim.initial_heading_deg = 5.0;
    c.sim.max_time_s = 900.0;
  } else if (name == "spath" || name == "turn90") {
    c.path.kind = name == "spath" ? PathKind::SPattern : PathKind::Turn90;
    c.path.speed_schedule = {{0.0, 0.6}, {40.0, 0.6}, {50.0, 0.0}};
    c.path.leg_length_m = 4.0;
    c.path.turn_radius_m = 8.0;
    c.path.weave_wavelength_m = 30.0;
    c.sim.max_time_s = 120.0;
  } else {
    throw Error(ErrorCode::ConfigInvalid, "unknown scenario " + name);
  }
  c.sync_derived();
  c.validate();
  return c;
}

}  // namespace shipland
