#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wavefill::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  std::string command;  // solve | simulate | bounds | oracle | sweep | sigmoid
  std::filesystem::path input;
  std::filesystem::path output_dir = ".";
  std::optional<std::filesystem::path> schedule;  // simulate; default all-off

  int steps = 4096;
  double tolerance = 1e-9;
  bool emit_plot_data = false;
  int plot_points = 1000;
  bool oracle = false;  // solve: also run the enumeration check

  int grid = 8;
  std::optional<int> max_switches;
  bool interior_levels = false;

  std::optional<double> epsilon;
  int max_iters = 10;

  std::string sizes = "20:200:20";
  int instances = 50;
  std::uint64_t seed = 1;
  double radius_scale = 1.5;
};

/// "a:b:c" (start, stop inclusive, step) or a comma list. ValidationError
/// when malformed.
std::vector<int> parse_sizes(const std::string& spec);

/// Problems with the configuration itself; empty when it can run.
std::vector<std::string> validate_config(const RunConfig& config);

/// Executes one command, writing artifacts under output_dir and messages
/// to `log`. Returns 0, 2 (validation or parse failure) or 3 (numerical
/// failure).
int run(const RunConfig& config, std::ostream& log);

}  // namespace wavefill::cli
