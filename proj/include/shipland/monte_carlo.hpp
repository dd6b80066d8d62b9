#pragma once

#include <cstdint>
#include <vector>

#include "shipland/episode.hpp"

namespace shipland {

/// How each Monte Carlo episode differs from the template configuration.
struct Randomization {
  bool time_offset = true;
  /// Motion time offsets are drawn uniformly from [0, span).
  double time_offset_span_s = 60.0;
  bool start_pose = true;
  /// Start distance behind the bar plane, m.
  double behind_min_m = 4.0;
  double behind_max_m = 8.0;
  double lateral_m = 1.0;
  double vertical_m = 0.3;
  double heading_deg = 5.0;
};

struct EpisodeOutcome {
  std::uint64_t seed = 0;
  TerminalEvent terminal = TerminalEvent::Timeout;
  bool inside_box = false;
  double end_time = 0.0;
  double touchdown_x = 0.0;
  double touchdown_y = 0.0;
  double touchdown_roll_deg = 0.0;
  double touchdown_pitch_deg = 0.0;
};

struct MonteCarloSummary {
  int episodes = 0;
  int landed = 0;
  int inside_box = 0;
  int aborted = 0;
  int timed_out = 0;
  double success_rate = 0.0;  // landed inside the box / episodes
  double mean_abs_x = 0.0;
  double mean_abs_y = 0.0;
  double max_abs_x = 0.0;
  double max_abs_y = 0.0;
  double radial_p50 = 0.0;
  double radial_p95 = 0.0;
  double mean_time_to_land = 0.0;
  double roll_min_deg = 0.0;
  double roll_max_deg = 0.0;
  double pitch_min_deg = 0.0;
  double pitch_max_deg = 0.0;
  std::vector<EpisodeOutcome> outcomes;
};

/// Configuration of episode `index`: seed is template seed + index.
EpisodeConfig randomized_config(const EpisodeConfig& base, int index, const Randomization& rnd);

/// Linear-interpolated percentile, q in [0, 1]. Throws ConfigInvalid on an empty input.
double percentile(std::vector<double> values, double q);

MonteCarloSummary summarize(const std::vector<EpisodeOutcome>& outcomes);
EpisodeOutcome outcome_of(const EpisodeLog& log);

/// Runs `count` episodes on `threads` workers (0 picks the hardware count).
/// The summary does not depend on the thread count. When `logs` is given it
/// receives every episode log in index order.
MonteCarloSummary run_monte_carlo(const EpisodeConfig& base, int count, const Randomization& rnd = {},
                                  int threads = 0, std::vector<EpisodeLog>* logs = nullptr);

}  // namespace shipland
