#pragma once

#include <string>
#include <vector>

#include "shipland/monte_carlo.hpp"

namespace shipland {

/// CSV column names, one row per tick, in TickRecord field order.
const std::vector<std::string>& csv_columns();

void write_ticks_csv(const std::vector<TickRecord>& ticks, const std::string& path);
/// Throws IoFailure when the file cannot be read, ConfigInvalid on a malformed row.
std::vector<TickRecord> read_ticks_csv(const std::string& path);

std::string episode_summary_json(const EpisodeLog& log);
std::string monte_carlo_summary_json(const MonteCarloSummary& summary);

std::string trajectory_svg(const std::vector<TickRecord>& ticks);
std::string time_history_svg(const std::vector<TickRecord>& ticks);
/// Touchdown points over the deck square with the success box drawn on it.
/// Throws ConfigInvalid when there is nothing to plot.
std::string landing_scatter_svg(const std::vector<EpisodeOutcome>& outcomes, double half_box_m, double deck_size_m);

/// Writes ticks.csv, summary.json (with the configuration embedded) and the
/// three plots into `dir`. Throws IoFailure.
void write_episode_report(const EpisodeLog& log, const EpisodeConfig& cfg, const std::string& dir);
/// Writes summary.json, outcomes.csv and landing_scatter.svg.
void write_monte_carlo_report(const MonteCarloSummary& summary, const EpisodeConfig& cfg, const std::string& dir);
/// One log gives the episode report; several give the Monte Carlo report plus
/// one ticks_<seed>.csv per episode. Throws ConfigInvalid on an empty list.
void emit_report(const std::vector<EpisodeLog>& logs, const EpisodeConfig& cfg, const std::string& dir);

/// Re-reads a directory written by one of the functions above, regenerates
/// its plots and returns a plain-text summary.
std::string regenerate_report(const std::string& dir);

}  // namespace shipland
