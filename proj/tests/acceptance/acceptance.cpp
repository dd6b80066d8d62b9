// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scenes.hpp"
#include "shipland/control.hpp"
#include "shipland/cue_pipeline.hpp"
#include "shipland/detector.hpp"
#include "shipland/error.hpp"
#include "shipland/kalman.hpp"
#include "shipland/monte_carlo.hpp"
#include "shipland/pixel_plant.hpp"
#include "shipland/pnp.hpp"
#include "shipland/relative_state.hpp"
#include "shipland/render.hpp"

using namespace shipland;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double relative_yaw(const Pose& cue_in_camera) {
  PnPResult r;
  r.pose = cue_in_camera;
  r.converged = true;
  return pose_to_relative_state(r, std::nullopt, 0.0).yaw_deg;
}

Verdict pnp_accuracy() {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> noise(0.0, 0.5);
  const CameraModel camera;
  const auto obj_arr = CueSpec{}.object_points();
  const std::vector<Vec3> object(obj_arr.begin(), obj_arr.end());
  double sum_pos = 0.0, sum_yaw = 0.0, worst_clean_pos = 0.0, worst_clean_rot = 0.0;
  int unconverged = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    // Closed-loop episodes stay within about 7 degrees of the ship heading
    // once close-range tracking starts.
    const auto scene = scenes::random_scene(rng, 1.0, 5.0, 10.0);
    const Pose truth = compose(inverse(scene.camera), scene.cue);
    std::vector<Pixel> exact, noisy;
    for (const Vec3& p : object) {
      const Pixel px = project_camera_point(camera, truth.apply(p));
      exact.push_back(px);
      noisy.push_back({px.u + noise(rng), px.v + noise(rng)});
    }
    const PnPResult clean = solve_pnp(exact, object, camera);
    worst_clean_pos = std::max(worst_clean_pos, (clean.pose.position() - truth.position()).norm());
    worst_clean_rot = std::max(
        worst_clean_rot, rad2deg(Eigen::AngleAxisd(clean.pose.rotation().transpose() * truth.rotation()).angle()));

    const PnPResult est = solve_pnp(noisy, object, camera);
    unconverged += !est.converged;
    sum_pos += (est.pose.position() - truth.position()).norm();
    sum_yaw += std::abs(wrap_deg(relative_yaw(est.pose) - relative_yaw(truth)));
  }
  const double mean_pos = sum_pos / n, mean_yaw = sum_yaw / n;
  return {mean_pos < 0.01 && mean_yaw < 1.0 && worst_clean_pos < 1e-6 && worst_clean_rot < 1e-6 && unconverged == 0,
          format("mean position error %.2f mm, mean yaw error %.3f deg over %d noisy poses (1-5 m, yaw +-10 deg); zero-noise worst %.1e m / "
                 "%.1e deg; %d unconverged",
                 1e3 * mean_pos, mean_yaw, n, worst_clean_pos, worst_clean_rot, unconverged)};
}

Verdict exponential_vs_linear() {
  const ExpGainSet roll{1.2, 0.0158, 0.0, 1.0};
  // Linear gain matching the exponential law's secant slope over a 100 px error.
  const double k = roll.m * (std::exp(roll.a * 100.0) - roll.d);
  const auto e = run_pixel_plant([&](double err) { return exp_control(err, roll); });
  const auto l = run_pixel_plant([&](double err) { return saturate(k * err); });
  const bool pass = e.tail_amplitude_px <= 0.5 * l.tail_amplitude_px && std::isfinite(e.tail_mean_px);
  return {pass, format("tail amplitude exp %.2f px vs linear-P %.2f px (ratio %.3f, need <= 0.5); exp tail mean %.2f px",
                       e.tail_amplitude_px, l.tail_amplitude_px, e.tail_amplitude_px / l.tail_amplitude_px,
                       e.tail_mean_px)};
}

Verdict spike_rejection() {
  const ProbPidGainSet roll = ProbPidTable{}.roll;
  PidChannelState s;
  s.has_previous = true;
  PidTerms terms;
  prob_pid_step(s, 0.2, 0.03, roll, 50.0, &terms);
  const double fixed = roll.b * 0.2 / 0.03;
  const double ratio = std::abs(terms.d) / fixed;
  return {ratio <= 1e-4, format("derivative %.3e vs fixed-gain %.2f, ratio %.2e (need <= 1e-4)", terms.d, fixed, ratio)};
}

Verdict landing_scatter() {
  const EpisodeConfig cfg = scenario_config("natops");
  const MonteCarloSummary s = run_monte_carlo(cfg, 50);
  const NatopsParams motion = cfg.motion.natops;
  const double roll_span = (s.roll_max_deg - s.roll_min_deg) / (2.0 * motion.roll_amplitude_deg);
  const double pitch_span = (s.pitch_max_deg - s.pitch_min_deg) / (2.0 * motion.pitch_amplitude_deg);
  const bool pass = s.landed == 50 && s.inside_box == 50 && roll_span >= 0.5 && pitch_span >= 0.5;
  return {pass, format("%d/50 landed, %d/50 inside box, max |x| %.3f m, max |y| %.3f m; roll [%.1f, %.1f] deg (%.0f%% of "
                       "envelope), pitch [%.1f, %.1f] deg (%.0f%%)",
                       s.landed, s.inside_box, s.max_abs_x, s.max_abs_y, s.roll_min_deg, s.roll_max_deg,
                       100.0 * roll_span, s.pitch_min_deg, s.pitch_max_deg, 100.0 * pitch_span)};
}

Verdict mode_sequence() {
  const EpisodeConfig cfg = scenario_config("longrange");
  const EpisodeLog log = run_episode(cfg);
  std::string seq = "5";
  bool ordered = true;
  for (std::size_t i = 0; i < log.transitions.size(); ++i) {
    const auto& tr = log.transitions[i];
    seq += format(" -> %d@%.1fm", tr.to, log.transition_ranges[i]);
    ordered = ordered && tr.to < tr.from;
  }
  const std::vector<int> expected{4, 3, 2, 1};
  std::vector<int> entered;
  for (const auto& tr : log.transitions) entered.push_back(tr.to);
  bool ranges_ok = entered == expected;
  if (ranges_ok) {
    // Range is measured to the bar; the ship's aft face sits a few metres
    // closer, so the ship limit is checked with that allowance.
    const double ship_limit = cfg.detector.ship_reference_range_m + cfg.ship.bar_center.x() -
                              cfg.ship.aft_face_center.x();
    ranges_ok = log.transition_ranges[0] <= ship_limit && log.transition_ranges[1] <= cfg.detector.bar_reference_range_m &&
                log.transition_ranges[0] > cfg.detector.bar_reference_range_m &&
                log.transition_ranges[2] < log.transition_ranges[1] && log.transition_ranges[3] < log.transition_ranges[2];
  }
  const bool pass = ordered && ranges_ok && log.landed();
  return {pass, format("modes %s; %s", seq.c_str(), log.landed() ? "landed" : to_string(log.terminal))};
}

Verdict detection_range() {
  const CameraModel camera;
  const Pose cam = camera_pose_world(Vec3::Zero(), 0.0);
  auto seen_at = [&](double range) {
    DetectionTarget t;
    t.pose = Pose(cue_mount_rotation(), Vec3(range, 0.0, 0.0));
    return mock_detect(t, cam, camera, 0.0).has_value();
  };
  bool near_ok = true;
  for (double r : {10.0, 100.0, 200.0, 240.0, 249.9, 250.0}) near_ok = near_ok && seen_at(r);
  const bool far_none = !seen_at(250.1) && !seen_at(260.0);
  const double big = max_detection_range(ObjectClass::Ship, 15.0 * 15.0);
  const double rel = std::abs(big - 17361.0) / 17361.0;
  return {near_ok && far_none && rel <= 0.005,
          format("1.8 m target seen up to 250 m: %s, unseen at 260 m: %s; 15 m target R_max %.0f m (%.3f%% off)",
                 near_ok ? "yes" : "no", far_none ? "yes" : "no", big, 100.0 * rel)};
}

// Independent check of the screening rule on canonical-order corners.
bool violates_tolerances(const std::array<Pixel, 8>& c) {
  const int sides[4][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}};
  for (int s = 0; s < 4; ++s) {
    const Pixel &a0 = c[sides[s][0]], &a1 = c[sides[s][1]], &b0 = c[4 + sides[s][0]], &b1 = c[4 + sides[s][1]];
    const double la = std::hypot(a1.u - a0.u, a1.v - a0.v), lb = std::hypot(b1.u - b0.u, b1.v - b0.v);
    if (std::abs(la - lb) / (0.5 * (la + lb)) > 0.10) return true;
    const bool horizontal = s % 2 == 0;
    const double sa = horizontal ? (a1.v - a0.v) / (a1.u - a0.u) : (a1.u - a0.u) / (a1.v - a0.v);
    const double sb = horizontal ? (b1.v - b0.v) / (b1.u - b0.u) : (b1.u - b0.u) / (b1.v - b0.v);
    if (std::abs(sa - sb) > 0.05) return true;
  }
  return false;
}

Verdict corner_pipeline() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const CameraModel camera;
  const CueSpec cue;
  RenderStyle style;
  style.noise_sigma = 2.0;
  double sum_err = 0.0;
  int corners = 0, failed = 0, accepted = 0, accepted_over_2px = 0;
  int constructed = 0, rejected = 0;
  const int n = 500;
  for (int i = 0; i < n; ++i) {
    const auto scene = scenes::random_scene(rng, 1.0, 10.0, 20.0);
    const RenderResult frame = render_cue(scene.camera, camera, cue, scene.cue, style, &rng);
    try {
      const auto found = extract_cue_corners(frame.image);
      double worst = 0.0;
      for (std::size_t k = 0; k < 8; ++k) {
        const double e = std::hypot(found[k].u - frame.truth[k].u, found[k].v - frame.truth[k].v);
        sum_err += e;
        worst = std::max(worst, e);
        ++corners;
      }
      try {
        screen_corners(found);
        ++accepted;
        accepted_over_2px += worst > 2.0;
      } catch (const ScreenRejectError&) {
      }
    } catch (const Error&) {
      ++failed;
    }

    // Tolerance violations built from the exact projections: one rectangle
    // stretched sideways or sheared about its centre.
    for (int kind = 0; kind < 2; ++kind) {
      std::array<Pixel, 8> bad = frame.truth;
      const int r = u01(rng) < 0.5 ? 0 : 4;
      double cu = 0.0, cv = 0.0;
      for (int k = r; k < r + 4; ++k) cu += bad[k].u / 4.0, cv += bad[k].v / 4.0;
      if (kind == 0) {
        const double scale = u01(rng) < 0.5 ? 1.15 + 0.35 * u01(rng) : 0.85 - 0.25 * u01(rng);
        for (int k = r; k < r + 4; ++k) bad[k].u = cu + scale * (bad[k].u - cu);
      } else {
        const double shear = (0.07 + 0.23 * u01(rng)) * (u01(rng) < 0.5 ? -1.0 : 1.0);
        for (int k = r; k < r + 4; ++k) bad[k].u += shear * (bad[k].v - cv);
      }
      if (!violates_tolerances(bad)) continue;
      ++constructed;
      try {
        screen_corners(bad);
      } catch (const ScreenRejectError&) {
        ++rejected;
      }
    }
  }
  const double mean_err = corners > 0 ? sum_err / corners : INFINITY;
  const bool pass = mean_err <= 0.5 && rejected == constructed && constructed >= n && accepted_over_2px == 0;
  return {pass, format("mean corner error %.3f px over %d scenes (%d extraction failures, %d/%d accepted by screening, "
                       "%d accepted with error > 2 px); %d/%d constructed violations rejected",
                       mean_err, n, failed, accepted, n - failed, accepted_over_2px, rejected, constructed)};
}

Verdict kalman_behaviour() {
  std::mt19937_64 rng(108);
  std::normal_distribution<double> noise(0.0, 2.0);
  KalmanState k = make_kalman();
  std::vector<double> in, out;
  for (int i = 0; i < 20000; ++i) {
    const double m = 7.0 + noise(rng);
    k = kalman_update(k, m);
    if (i < 200) continue;
    in.push_back(m);
    out.push_back(k.ce);
  }
  const double ratio = oracle::sample_variance(out) / oracle::sample_variance(in);
  const auto [kg_oracle, p_oracle] = oracle::kalman_fixed_point(0.005, 0.05);
  const bool pass = ratio <= 0.5 && std::abs(k.kg - 0.2702) <= 1e-3 && std::abs(k.kg - kg_oracle) <= 1e-6;
  return {pass, format("variance ratio %.3f (need <= 0.5); steady-state gain %.5f, oracle %.5f, P %.5f", ratio, k.kg,
                       kg_oracle, k.p)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "PnP accuracy", 30.0, pnp_accuracy},
      {"AC2", "exponential vs linear-P oscillation", 5.0, exponential_vs_linear},
      {"AC3", "derivative spike rejection", 1.0, spike_rejection},
      {"AC4", "NATOPS landing scatter", 300.0, landing_scatter},
      {"AC5", "mode sequencing from 250 m", 60.0, mode_sequence},
      {"AC6", "detection range rule", 1.0, detection_range},
      {"AC7", "corner pipeline accuracy and screening", 120.0, corner_pipeline},
      {"AC8", "Kalman variance reduction", 5.0, kalman_behaviour},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("[%s] %s %s: %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
