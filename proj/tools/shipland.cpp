#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "shipland/error.hpp"
#include "shipland/report.hpp"

using namespace shipland;

namespace {

void print_episode(const EpisodeLog& log) {
  std::printf("seed %llu: %s (%s) at t=%.2f s\n", static_cast<unsigned long long>(log.seed), to_string(log.terminal),
              log.terminal_reason.c_str(), log.end_time);
  for (std::size_t i = 0; i < log.transitions.size(); ++i)
    std::printf("  t=%7.2f s  mode %d -> %d  range %.2f m\n", log.transitions[i].t, log.transitions[i].from,
                log.transitions[i].to, log.transition_ranges[i]);
  if (log.landed())
    std::printf("touchdown x=%+.3f m y=%+.3f m (%s box), deck roll %+.2f deg pitch %+.2f deg\n", log.touchdown_x,
                log.touchdown_y, log.inside_box ? "inside" : "outside", log.touchdown_roll_deg,
                log.touchdown_pitch_deg);
  std::printf("corner frames %d/%d, detections %d\n", log.corner_successes, log.corner_attempts, log.ml_detections);
}

int run_simulation(EpisodeConfig cfg, const std::string& out, bool debug) {
  if (debug) {
    cfg.sim.debug_dir = (std::filesystem::path(out) / "debug").string();
    std::filesystem::create_directories(cfg.sim.debug_dir);
  }
  const EpisodeLog log = run_episode(cfg);
  write_episode_report(log, cfg, out);
  print_episode(log);
  std::printf("wrote %s\n", out.c_str());
  return log.landed() && log.inside_box ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ship-deck landing simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_dir, scenario;
  std::uint64_t seed = 0;
  int count = 50, threads = 0;
  bool debug = false;

  auto* sim = app.add_subcommand("simulate", "Run one closed-loop episode");
  sim->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  auto* sim_seed = sim->add_option("--seed", seed, "Random seed (overrides the config)");
  sim->add_option("--out", out_dir, "Output directory")->required();
  sim->add_flag("--debug", debug, "Dump per-stage images of the corner pipeline");

  auto* mc = app.add_subcommand("montecarlo", "Run randomised episodes");
  mc->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  mc->add_option("-n,--count", count, "Number of episodes")->check(CLI::PositiveNumber);
  auto* mc_seed = mc->add_option("--seed", seed, "Base seed (overrides the config)");
  mc->add_option("--threads", threads, "Worker threads, 0 for all cores");
  mc->add_option("--out", out_dir, "Output directory")->required();

  auto* demo = app.add_subcommand("demo", "Run a built-in scenario");
  demo->add_option("--scenario", scenario, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"longrange", "natops", "perry", "spath", "turn90"}));
  auto* demo_seed = demo->add_option("--seed", seed, "Random seed");
  demo->add_option("--out", out_dir, "Output directory (default demo_<scenario>)");
  demo->add_flag("--debug", debug, "Dump per-stage images of the corner pipeline");

  auto* rep = app.add_subcommand("report", "Regenerate plots and print a summary for an output directory");
  rep->add_option("--in", in_dir, "Directory written by simulate, montecarlo or demo")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      EpisodeConfig cfg = load_config(config_path);
      if (*sim_seed) cfg.sim.seed = seed;
      return run_simulation(cfg, out_dir, debug);
    }
    if (demo->parsed()) {
      EpisodeConfig cfg = scenario_config(scenario);
      if (*demo_seed) cfg.sim.seed = seed;
      return run_simulation(cfg, out_dir.empty() ? "demo_" + scenario : out_dir, debug);
    }
    if (mc->parsed()) {
      EpisodeConfig cfg = load_config(config_path);
      if (*mc_seed) cfg.sim.seed = seed;
      const MonteCarloSummary s = run_monte_carlo(cfg, count, {}, threads);
      write_monte_carlo_report(s, cfg, out_dir);
      std::cout << regenerate_report(out_dir) << "wrote " << out_dir << '\n';
      return 0;
    }
    if (rep->parsed()) {
      std::cout << regenerate_report(in_dir);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
