#include <iostream>

#include <CLI11.hpp>

#include "wavefill/cli.hpp"

int main(int argc, char** argv) {
  using wavefill::cli::RunConfig;
  RunConfig config;
  CLI::App app{"Budgeted multi-channel campaign scheduling on consensus networks"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("input", config.input, "problem JSON file")->required();
    cmd->add_option("-o,--output-dir", config.output_dir, "directory for emitted files");
  };
  auto add_steps = [&](CLI::App* cmd) {
    cmd->add_option("--steps", config.steps, "simulation steps (>= 64)");
  };
  auto add_tolerance = [&](CLI::App* cmd) {
    cmd->add_option("--tolerance", config.tolerance, "relative budget tolerance for bisection");
  };
  auto add_enumeration = [&](CLI::App* cmd) {
    cmd->add_option("--grid", config.grid, "enumeration switch grid cells (2..16)");
    cmd->add_option("--max-switches", config.max_switches,
                    "per-channel switch cap (default: general spectral bound)");
    cmd->add_flag("--interior-levels", config.interior_levels,
                  "also enumerate interior control levels");
  };

  auto* solve = app.add_subcommand("solve", "water-filling solve (linear objective)");
  add_common(solve, true);
  add_steps(solve);
  add_tolerance(solve);
  solve->add_flag("--emit-plot-data", config.emit_plot_data, "write water-line and profile CSVs");
  solve->add_option("--plot-points", config.plot_points, "intervals in plot CSVs");
  solve->add_flag("--oracle", config.oracle, "compare against brute-force enumeration");
  add_enumeration(solve);

  auto* simulate = app.add_subcommand("simulate", "integrate the opinion dynamics");
  add_common(simulate, true);
  add_steps(simulate);
  simulate->add_option("--schedule", config.schedule, "schedule JSON (default: all channels off)");

  auto* bounds = app.add_subcommand("bounds", "switch-count bounds per channel");
  add_common(bounds, true);

  auto* oracle = app.add_subcommand("oracle", "water-filling vs brute-force enumeration");
  add_common(oracle, true);
  add_tolerance(oracle);
  add_enumeration(oracle);

  auto* sweep = app.add_subcommand("sweep", "switch bounds over random geometric graphs");
  add_common(sweep, false);
  sweep->add_option("--n", config.sizes, "sizes as start:stop:step or a comma list");
  sweep->add_option("--instances", config.instances, "instances per size");
  sweep->add_option("--seed", config.seed, "base seed");
  sweep->add_option("--radius-scale", config.radius_scale,
                    "radius as a multiple of sqrt(log n / (pi n))");

  auto* sigmoid = app.add_subcommand("sigmoid", "late-decider iteration (sigmoid objective)");
  add_common(sigmoid, true);
  add_steps(sigmoid);
  add_tolerance(sigmoid);
  sigmoid->add_option("--epsilon", config.epsilon, "late-decider closeness threshold");
  sigmoid->add_option("--max-iters", config.max_iters, "iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wavefill::cli::kExitValidation;
  }
  config.command = app.get_subcommands().front()->get_name();
  return wavefill::cli::run(config, std::cerr);
}
