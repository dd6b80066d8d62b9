#include "shipland/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "shipland/error.hpp"

namespace shipland {

EpisodeConfig randomized_config(const EpisodeConfig& base, int index, const Randomization& rnd) {
  EpisodeConfig cfg = base;
  cfg.sim.seed = base.sim.seed + static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.sim.seed), static_cast<std::uint32_t>(cfg.sim.seed >> 32),
                    0x6d63u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto sym = [&](double half) { return half * (2.0 * u01(rng) - 1.0); };

  if (rnd.time_offset) cfg.motion.time_offset_s = rnd.time_offset_span_s * u01(rng);
  if (rnd.start_pose) {
    const double behind = rnd.behind_min_m + (rnd.behind_max_m - rnd.behind_min_m) * u01(rng);
    const ShipState ship = ship_state(0.0, cfg.path);
    const Vec3 local = cfg.ship.bar_center + Vec3(-behind, sym(rnd.lateral_m), sym(rnd.vertical_m));
    cfg.sim.initial_position = ship.pose().apply(local);
    cfg.sim.initial_heading_deg = wrap_deg(ship.heading_deg + sym(rnd.heading_deg));
  }
  return cfg;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::ConfigInvalid, "percentile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

EpisodeOutcome outcome_of(const EpisodeLog& log) {
  return {log.seed,           log.terminal,         log.inside_box,         log.end_time,
          log.touchdown_x,    log.touchdown_y,      log.touchdown_roll_deg, log.touchdown_pitch_deg};
}

MonteCarloSummary summarize(const std::vector<EpisodeOutcome>& outcomes) {
  MonteCarloSummary s;
  s.episodes = static_cast<int>(outcomes.size());
  s.outcomes = outcomes;
  std::vector<double> radial;
  double sum_x = 0.0, sum_y = 0.0, sum_t = 0.0;
  bool first = true;
  for (const EpisodeOutcome& o : outcomes) {
    if (o.terminal == TerminalEvent::Abort) ++s.aborted;
    if (o.terminal == TerminalEvent::Timeout) ++s.timed_out;
    if (o.terminal != TerminalEvent::Landed) continue;
    ++s.landed;
    if (o.inside_box) ++s.inside_box;
    sum_x += std::abs(o.touchdown_x);
    sum_y += std::abs(o.touchdown_y);
    sum_t += o.end_time;
    s.max_abs_x = std::max(s.max_abs_x, std::abs(o.touchdown_x));
    s.max_abs_y = std::max(s.max_abs_y, std::abs(o.touchdown_y));
    radial.push_back(std::hypot(o.touchdown_x, o.touchdown_y));
    if (first) {
      s.roll_min_deg = s.roll_max_deg = o.touchdown_roll_deg;
      s.pitch_min_deg = s.pitch_max_deg = o.touchdown_pitch_deg;
      first = false;
    }
    s.roll_min_deg = std::min(s.roll_min_deg, o.touchdown_roll_deg);
    s.roll_max_deg = std::max(s.roll_max_deg, o.touchdown_roll_deg);
    s.pitch_min_deg = std::min(s.pitch_min_deg, o.touchdown_pitch_deg);
    s.pitch_max_deg = std::max(s.pitch_max_deg, o.touchdown_pitch_deg);
  }
  if (s.episodes > 0) s.success_rate = static_cast<double>(s.inside_box) / s.episodes;
  if (s.landed > 0) {
    s.mean_abs_x = sum_x / s.landed;
    s.mean_abs_y = sum_y / s.landed;
    s.mean_time_to_land = sum_t / s.landed;
    s.radial_p50 = percentile(radial, 0.5);
    s.radial_p95 = percentile(radial, 0.95);
  }
  return s;
}

MonteCarloSummary run_monte_carlo(const EpisodeConfig& base, int count, const Randomization& rnd, int threads,
                                  std::vector<EpisodeLog>* logs) {
  if (count < 1) throw Error(ErrorCode::ConfigInvalid, "episode count must be positive");
  base.validate();
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);

  std::vector<EpisodeOutcome> outcomes(static_cast<std::size_t>(count));
  if (logs) logs->assign(static_cast<std::size_t>(count), EpisodeLog{});
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      EpisodeLog log = run_episode(randomized_config(base, i, rnd));
      outcomes[static_cast<std::size_t>(i)] = outcome_of(log);
      if (logs) (*logs)[static_cast<std::size_t>(i)] = std::move(log);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return summarize(outcomes);
}

}  // namespace shipland
