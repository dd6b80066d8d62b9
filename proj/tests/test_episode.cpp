#include <doctest.h>

#include <cstring>
#include <sstream>

#include "shipland/episode.hpp"
#include "shipland/error.hpp"

using namespace shipland;

namespace {

std::string fingerprint(const EpisodeLog& log) {
  std::ostringstream os;
  os << std::hexfloat;
  for (const TickRecord& r : log.ticks) {
    os << r.t << r.mode << r.cmd.pitch << r.cmd.roll << r.cmd.heave << r.cmd.yaw << r.position.x() << r.position.y()
       << r.position.z() << r.heading_deg << r.est_x << r.est_y << r.est_z << r.est_yaw_deg << r.bar_detected
       << r.ship_detected << '\n';
  }
  os << static_cast<int>(log.terminal) << log.end_time << log.touchdown_x << log.touchdown_y;
  return os.str();
}

void check_log_invariants(const EpisodeLog& log) {
  REQUIRE_FALSE(log.ticks.empty());
  for (std::size_t i = 1; i < log.ticks.size(); ++i) REQUIRE(log.ticks[i].t > log.ticks[i - 1].t);
  CHECK(log.end_time > log.ticks.back().t);
  CHECK_FALSE(log.terminal_reason.empty());
  for (const TickRecord& r : log.ticks) {
    REQUIRE(r.cmd.within_bounds());
    if (r.mode == 1) {
      REQUIRE(r.cmd.pitch == 0.0);
      REQUIRE(r.cmd.roll == 0.0);
    }
  }
  // Every mode change in the ticks is logged as a transition.
  std::size_t changes = 0;
  int prev = 5;
  for (const TickRecord& r : log.ticks) {
    if (r.mode != prev) ++changes;
    prev = r.mode;
  }
  CHECK(changes == log.transitions.size());
  CHECK(log.transition_ranges.size() == log.transitions.size());
}

}  // namespace

TEST_SUITE("episode") {
  TEST_CASE("same configuration gives a bit-identical log") {
    EpisodeConfig cfg = scenario_config("natops");
    cfg.sim.seed = 5;
    const EpisodeLog a = run_episode(cfg);
    const EpisodeLog b = run_episode(cfg);
    CHECK(fingerprint(a) == fingerprint(b));
    cfg.sim.seed = 6;
    CHECK(fingerprint(run_episode(cfg)) != fingerprint(a));
  }

  TEST_CASE("natops landing from the default start") {
    const EpisodeLog log = run_episode(scenario_config("natops"));
    check_log_invariants(log);
    CHECK(log.terminal == TerminalEvent::Landed);
    CHECK(log.inside_box);
    CHECK(std::abs(log.touchdown_x) <= 0.35);
    CHECK(std::abs(log.touchdown_y) <= 0.35);
    REQUIRE_FALSE(log.transitions.empty());
    CHECK(log.transitions.back().to == 1);
  }

  TEST_CASE("no perception result is used before its latency has elapsed") {
    const EpisodeConfig cfg = scenario_config("natops");
    const EpisodeLog log = run_episode(cfg);
    for (const TickRecord& r : log.ticks) {
      if (r.has_estimate) {
        CHECK(r.t >= cfg.sim.corner_latency_s - 1e-9);
        break;
      }
    }
    for (const TickRecord& r : log.ticks) {
      if (r.bar_detected || r.ship_detected) {
        CHECK(r.t >= cfg.sim.ml_latency_s - 1e-9);
        break;
      }
    }
    // Commands before the first delivered corner sample come from hold or
    // long-range modes only.
    for (const TickRecord& r : log.ticks) {
      if (r.has_estimate) break;
      CHECK(r.mode >= 3);
    }
  }

  TEST_CASE("start 50 m out lands inside the box") {
    EpisodeConfig cfg = scenario_config("natops");
    cfg.sim.initial_position = cfg.ship.bar_center + Vec3(-50.0, 1.0, 0.5);
    cfg.sim.max_time_s = 150.0;
    const EpisodeLog log = run_episode(cfg);
    check_log_invariants(log);
    CHECK(log.terminal == TerminalEvent::Landed);
    CHECK(log.inside_box);
  }

  TEST_CASE("constant 5 m/s crosswind still lands") {
    EpisodeConfig cfg = scenario_config("natops");
    cfg.wind.mean = Vec3(0.0, 5.0, 0.0);
    const EpisodeLog log = run_episode(cfg);
    check_log_invariants(log);
    CHECK(log.terminal == TerminalEvent::Landed);
  }

  TEST_CASE("running out of time is a timeout") {
    EpisodeConfig cfg = scenario_config("natops");
    cfg.sim.max_time_s = 1.0;
    const EpisodeLog log = run_episode(cfg);
    CHECK(log.terminal == TerminalEvent::Timeout);
    CHECK(log.ticks.size() == 100);
    CHECK(log.end_time == doctest::Approx(1.0));
  }

  TEST_CASE("descending into the sea is an abort") {
    EpisodeConfig cfg = scenario_config("natops");
    // Far to the side, nothing in view, so hold mode never climbs back.
    cfg.sim.initial_position = Vec3(-20.0, 40.0, 0.05);
    cfg.sim.initial_heading_deg = 90.0;
    cfg.wind.mean = Vec3(0.0, 0.0, -3.0);
    cfg.wind.rejection_tau_s = 1e6;
    cfg.sim.max_time_s = 5.0;
    const EpisodeLog log = run_episode(cfg);
    CHECK(log.terminal == TerminalEvent::Abort);
    CHECK(log.terminal_reason == "reached sea level");
  }

  TEST_CASE("invalid configuration is rejected") {
    EpisodeConfig cfg = scenario_config("natops");
    cfg.sim.dt = 0.0;
    try {
      run_episode(cfg);
      FAIL("expected ConfigInvalid");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigInvalid);
    }
  }
}
