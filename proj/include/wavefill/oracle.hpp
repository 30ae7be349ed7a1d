#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wavefill/problem.hpp"
#include "wavefill/schedule.hpp"
#include "wavefill/waterfill.hpp"

namespace wavefill {

/// Exhaustive search space: every set of cells of a uniform grid on [0, T]
/// whose indicator has at most the cap of on/off transitions, crossed over
/// channels.
struct EnumerationSpec {
  int switch_grid = 8;                              // number of cells, >= 2
  std::optional<std::vector<int>> max_switches;     // per channel; default bound_general
  bool include_interior_levels = false;
  std::vector<double> interior_levels{0.25, 0.5, 0.75};  // fractions of u_max
  int steps = 512;                                  // simulation steps for sigmoid scoring
};

inline constexpr std::size_t kCandidateGuard = 1'000'000;

struct EnumerationResult {
  BangBangSchedule best;
  double value = 0.0;
  bool best_is_interior = false;
  /// Best over extreme-level candidates only (equals `best` unless an
  /// interior level won).
  BangBangSchedule best_extreme;
  double best_extreme_value = 0.0;
  std::size_t candidates = 0;
  std::size_t feasible = 0;
  std::vector<int> caps;
};

/// Candidate count for `spec` without evaluating anything.
std::size_t count_candidates(const CampaignProblem& problem, const EnumerationSpec& spec);

/// Argmax of the objective gain (linear: closed_form_gain; sigmoid: true
/// objective of the simulated terminal state) over budget-feasible
/// candidates, ties broken towards the lexicographically smallest cell
/// encoding. Requires n <= 8, m <= 2, switch_grid in [2, 16]; a candidate
/// count above kCandidateGuard is a ValidationError.
EnumerationResult enumerate_best(const CampaignProblem& problem, const EnumerationSpec& spec);

/// max_i u_max_i * max_t |h_i(t)| * T / switch_grid.
double grid_slack(const CampaignProblem& problem, const std::vector<ChannelProfile>& profiles,
                  int switch_grid);

}  // namespace wavefill
