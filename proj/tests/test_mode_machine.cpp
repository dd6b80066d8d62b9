#include <doctest.h>

#include <random>

#include "shipland/error.hpp"
#include "shipland/mode_machine.hpp"

using namespace shipland;

namespace {

Detection det(ObjectClass c, double u, double v, double area) {
  Detection d;
  d.object = c;
  d.center = {u, v};
  d.area_px = area;
  return d;
}

PerceptionSummary with_corner(std::uint64_t seq, bool landing = false, double x = 3.0) {
  PerceptionSummary p;
  RelativeState r;
  r.x = x;
  r.timestamp = 0.03 * static_cast<double>(seq);
  p.corner = r;
  p.corner_age = 0.0;
  p.corner_seq = seq;
  p.landing_condition = landing;
  p.height_above_deck = 1.0;
  return p;
}

PerceptionSummary with_ship(std::uint64_t seq) {
  PerceptionSummary p;
  p.ship = det(ObjectClass::Ship, 700, 380, 2000);
  p.ship_age = 0.0;
  p.ship_seq = seq;
  return p;
}

PerceptionSummary with_bar(std::uint64_t seq) {
  PerceptionSummary p = with_ship(seq);
  p.bar = det(ObjectClass::Bar, 600, 340, 1500);
  p.bar_age = 0.0;
  p.bar_seq = seq;
  return p;
}

}  // namespace

TEST_SUITE("mode_machine") {
  TEST_CASE("desired mode priority") {
    CHECK(desired_mode(with_corner(1, true)) == FlightMode::VerticalLanding);
    CHECK(desired_mode(with_corner(1)) == FlightMode::CornerTracking);
    CHECK(desired_mode(with_bar(1)) == FlightMode::BarTracking);
    CHECK(desired_mode(with_ship(1)) == FlightMode::ShipTracking);
    CHECK(desired_mode(PerceptionSummary{}) == FlightMode::HoldLast);
  }

  TEST_CASE("stale sources do not count") {
    PerceptionSummary p = with_bar(1);
    p.bar_age = 1.01;
    CHECK(desired_mode(p) == FlightMode::ShipTracking);
    p.ship_age = 1.5;
    CHECK(desired_mode(p) == FlightMode::HoldLast);
    PerceptionSummary c = with_corner(1, true);
    c.corner_age = 0.07;
    CHECK(desired_mode(c) == FlightMode::HoldLast);
  }

  TEST_CASE("valid corners inside the box reach vertical landing") {
    ModeMachine m({}, FlightMode::CornerTracking);
    for (std::uint64_t s = 1; s <= 2; ++s) CHECK(m.step(with_corner(s, true)) == FlightMode::CornerTracking);
    CHECK(m.step(with_corner(3, true)) == FlightMode::VerticalLanding);
  }

  TEST_CASE("only a fresh ship detection gives mode 4") {
    ModeMachine m;
    for (std::uint64_t s = 1; s <= 3; ++s) m.step(with_ship(s));
    CHECK(m.mode() == FlightMode::ShipTracking);
  }

  TEST_CASE("all sources stale gives mode 5 immediately") {
    ModeMachine m({}, FlightMode::CornerTracking);
    CHECK(m.step(PerceptionSummary{}) == FlightMode::HoldLast);
  }

  TEST_CASE("hysteresis counts new samples, not ticks") {
    ModeMachine m;
    for (int tick = 0; tick < 50; ++tick) CHECK(m.step(with_ship(1)) == FlightMode::HoldLast);
    m.step(with_ship(2));
    CHECK(m.mode() == FlightMode::HoldLast);
    m.step(with_ship(3));
    CHECK(m.mode() == FlightMode::ShipTracking);
  }

  TEST_CASE("a single spurious detection never switches modes") {
    ModeMachine m({}, FlightMode::ShipTracking);
    std::uint64_t bar_seq = 0;
    for (int tick = 0; tick < 500; ++tick) {
      PerceptionSummary p = with_ship(static_cast<std::uint64_t>(tick));
      if (tick % 7 == 3) {
        p.bar = det(ObjectClass::Bar, 640, 360, 1000);
        p.bar_age = 0.0;
        p.bar_seq = ++bar_seq;
      }
      m.step(p);
      CHECK(m.mode() == FlightMode::ShipTracking);
    }
  }

  TEST_CASE("approach with improving perception runs 4, 3, 2, 1") {
    ModeMachine m;
    std::vector<FlightMode> seen{m.mode()};
    auto run = [&](auto make, int n) {
      for (int i = 1; i <= n; ++i) {
        const FlightMode f = m.step(make(static_cast<std::uint64_t>(i)));
        if (f != seen.back()) seen.push_back(f);
      }
    };
    run(with_ship, 5);
    run(with_bar, 5);
    run([](std::uint64_t s) { return with_corner(s); }, 5);
    run([](std::uint64_t s) { return with_corner(s + 10, true); }, 5);
    const std::vector<FlightMode> expected{FlightMode::HoldLast, FlightMode::ShipTracking, FlightMode::BarTracking,
                                           FlightMode::CornerTracking, FlightMode::VerticalLanding};
    CHECK(seen == expected);
  }

  TEST_CASE("vertical landing is absorbing near the deck") {
    ModeMachine m({}, FlightMode::VerticalLanding);
    PerceptionSummary p;
    p.height_above_deck = 0.3;
    CHECK(m.step(p) == FlightMode::VerticalLanding);
    p.height_above_deck = 0.8;
    CHECK(m.step(with_corner(1)) == FlightMode::VerticalLanding);
    CHECK(m.step(p) == FlightMode::HoldLast);
  }

  TEST_CASE("mode 5 holds the last command and then hovers") {
    Controllers c;
    const ControlVector last{10.0, -5.0, 0.0, 2.0};
    const PerceptionSummary none;
    CHECK(select_command(FlightMode::HoldLast, none, c, last, 0.0) == last);
    CHECK(select_command(FlightMode::HoldLast, none, c, last, 1.0) == last);
    CHECK(select_command(FlightMode::HoldLast, none, c, last, 2.5) == ControlVector{});
  }

  TEST_CASE("mode 1 descends with zero attitude") {
    Controllers c;
    const ControlVector u = select_command(FlightMode::VerticalLanding, with_corner(1, true), c, {30, 20, 10, 5}, 0.0);
    CHECK(u == ControlVector{0.0, 0.0, -c.config().descent_percent, 0.0});
    CHECK(u.pitch == 0.0);
    CHECK(u.roll == 0.0);
  }

  TEST_CASE("missing perception for the mode throws InconsistentMode") {
    for (FlightMode f : {FlightMode::CornerTracking, FlightMode::BarTracking, FlightMode::ShipTracking}) {
      Controllers c;
      try {
        select_command(f, PerceptionSummary{}, c, {}, 0.0);
        FAIL("expected InconsistentMode");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentMode);
      }
    }
  }

  TEST_CASE("long-range commands steer toward the target") {
    Controllers c;
    PerceptionSummary p = with_ship(1);
    p.ship->center = {800, 300};  // right of and above the image centre
    p.ship->area_px = 1000;       // far away
    const ControlVector u = select_command(FlightMode::ShipTracking, p, c, {}, 0.0);
    CHECK(u.pitch > 0.0);
    CHECK(u.roll > 0.0);
    CHECK(u.heave > 0.0);
  }

  TEST_CASE("long-range yaw turns toward the ship heading") {
    Controllers c;
    PerceptionSummary p = with_bar(1);
    p.ship_heading_deg = 30.0;
    p.magnetometer_heading_deg = 0.0;
    CHECK(select_command(FlightMode::BarTracking, p, c, {}, 0.0).yaw > 0.0);
  }

  TEST_CASE("close-range channels hold between corner samples") {
    Controllers c;
    PerceptionSummary p = with_corner(1, false, 3.0);
    const ControlVector a = select_command(FlightMode::CornerTracking, p, c, {}, 0.0);
    CHECK(a.pitch > 0.0);
    p.corner->x = 5.0;
    CHECK(select_command(FlightMode::CornerTracking, p, c, {}, 0.01) == a);
  }

  TEST_CASE("select_command output is always bounded") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> wild(-1e4, 1e4);
    Controllers c;
    for (std::uint64_t i = 1; i < 300; ++i) {
      PerceptionSummary p = with_bar(i);
      p.bar->center = {wild(rng), wild(rng)};
      p.bar->area_px = std::abs(wild(rng)) * 100;
      p.corner = RelativeState{wild(rng), wild(rng), wild(rng), wild(rng), 0, 0, 0.03 * static_cast<double>(i)};
      p.corner_seq = i;
      const FlightMode f = i % 2 ? FlightMode::BarTracking : FlightMode::CornerTracking;
      CHECK(select_command(f, p, c, {}, 0.03 * static_cast<double>(i)).within_bounds());
    }
  }

  TEST_CASE("zero hysteresis is rejected") {
    ModeParams p;
    p.hysteresis = 0;
    CHECK_THROWS_AS(ModeMachine{p}, Error);
  }
}
