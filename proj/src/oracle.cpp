#include "wavefill/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "wavefill/bounds.hpp"
#include "wavefill/dynamics.hpp"
#include "wavefill/errors.hpp"
#include "wavefill/kernels.hpp"

namespace wavefill {

namespace {

struct Pattern {
  std::uint32_t mask = 0;  // bit (G - 1 - c) set iff cell c is on
  double fraction = 1.0;   // of u_max
  bool interior = false;
};

int transitions(std::uint32_t mask, int cells) {
  int count = 0;
  for (int c = 1; c < cells; ++c) {
    const bool prev = (mask >> (cells - c)) & 1u;
    const bool cur = (mask >> (cells - 1 - c)) & 1u;
    count += prev != cur;
  }
  return count;
}

bool cell_on(std::uint32_t mask, int cells, int c) { return (mask >> (cells - 1 - c)) & 1u; }

std::vector<int> resolve_caps(const CampaignProblem& problem, const EnumerationSpec& spec) {
  if (spec.max_switches) {
    if (static_cast<int>(spec.max_switches->size()) != problem.m())
      throw ContractError("enumerate_best: one switch cap per channel required");
    for (int cap : *spec.max_switches)
      if (cap < 0) throw ContractError("enumerate_best: switch caps must be >= 0");
    return *spec.max_switches;
  }
  const Spectrum spectrum = analyze(problem.graph);
  std::vector<int> caps;
  for (const auto& ch : problem.channels) caps.push_back(bound_general(spectrum.decomposition, ch.b));
  return caps;
}

// Lexicographic in the cell encoding (cell 0 most significant); within a
// mask the extreme level comes first so it wins ties.
std::vector<Pattern> channel_patterns(int cells, int cap, const EnumerationSpec& spec) {
  std::vector<Pattern> out;
  const std::uint32_t count = 1u << cells;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (transitions(mask, cells) > cap) continue;
    out.push_back({mask, 1.0, false});
    if (mask == 0 || !spec.include_interior_levels) continue;
    for (double f : spec.interior_levels) out.push_back({mask, f, true});
  }
  return out;
}

void check_spec(const CampaignProblem& problem, const EnumerationSpec& spec) {
  if (problem.n() > 8) throw ContractError("enumerate_best: n <= 8 required");
  if (problem.m() > 2) throw ContractError("enumerate_best: m <= 2 required");
  if (spec.switch_grid < 2 || spec.switch_grid > 16)
    throw ContractError("enumerate_best: switch_grid must be in [2, 16]");
  for (double f : spec.interior_levels)
    if (!(f > 0.0 && f < 1.0)) throw ContractError("enumerate_best: interior levels must be in (0, 1)");
}

ChannelSchedule to_schedule(const Pattern& pat, int cells, double horizon, double u_max) {
  ChannelSchedule out;
  out.level = pat.fraction * u_max;
  const double dt = horizon / cells;
  for (int c = 0; c < cells; ++c) {
    if (!cell_on(pat.mask, cells, c)) continue;
    const double start = c * dt;
    const double end = c + 1 == cells ? horizon : (c + 1) * dt;
    if (!out.on.empty() && out.on.back().end == start)
      out.on.back().end = end;
    else
      out.on.push_back({start, end});
  }
  if (out.on.empty()) out.level = u_max;
  return out;
}

}  // namespace

std::size_t count_candidates(const CampaignProblem& problem, const EnumerationSpec& spec) {
  check_spec(problem, spec);
  const auto caps = resolve_caps(problem, spec);
  std::size_t total = 1;
  for (int i = 0; i < problem.m(); ++i) {
    total *= channel_patterns(spec.switch_grid, caps[i], spec).size();
    if (total > kCandidateGuard * 1024) break;
  }
  return total;
}

EnumerationResult enumerate_best(const CampaignProblem& problem, const EnumerationSpec& spec) {
  check_spec(problem, spec);
  // A zero budget is meaningful here (only the all-off schedule is feasible).
  for (const auto& f : validate_problem(problem))
    if (!(f.field == "r" && problem.budget == 0.0))
      throw ValidationError("invalid problem: [" + f.field + "] " + f.message);

  const int G = spec.switch_grid;
  const int m = problem.m();
  const double T = problem.horizon;
  const double dt = T / G;

  EnumerationResult result;
  result.caps = resolve_caps(problem, spec);
  std::vector<std::vector<Pattern>> patterns;
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) {
    patterns.push_back(channel_patterns(G, result.caps[i], spec));
    total *= patterns.back().size();
    if (total > kCandidateGuard) {
      throw ValidationError("enumeration would evaluate more than " +
                            std::to_string(kCandidateGuard) + " candidates (at least " +
                            std::to_string(total) + "); use a smaller switch_grid than " +
                            std::to_string(G) + " or lower the switch caps");
    }
  }
  result.candidates = total;

  const Spectrum spectrum = analyze(problem.graph);
  const bool linear = problem.objective.kind == ObjectiveKind::kLinear;
  std::vector<ChannelProfile> profiles;
  if (linear) {
    const TerminalCostate lamT = terminal_costate(problem.objective);
    for (int i = 0; i < m; ++i)
      profiles.push_back(
          channel_profile(spectrum.decomposition, lamT, problem.channels[i].b, T, i));
  }

  // Per channel and pattern: gain (linear only) and cost.
  std::vector<std::vector<double>> gain(m), cost(m);
  for (int i = 0; i < m; ++i) {
    const Channel& ch = problem.channels[i];
    std::vector<double> cell_gain(G, 0.0);
    if (linear)
      for (int c = 0; c < G; ++c)
        cell_gain[c] = integrate_h(profiles[i], c * dt, c + 1 == G ? T : (c + 1) * dt);
    for (const Pattern& pat : patterns[i]) {
      const double level = pat.fraction * ch.u_max;
      const int on = std::popcount(pat.mask);
      double g = 0.0;
      for (int c = 0; c < G; ++c)
        if (cell_on(pat.mask, G, c)) g += cell_gain[c];
      gain[i].push_back(level * g);
      cost[i].push_back(on == 0 ? 0.0 : ch.cost(level) * on * dt);
    }
  }

  // Mixed-radix decoding, channel 0 most significant.
  auto decode = [&](std::size_t k) {
    std::vector<std::size_t> idx(m);
    for (int i = m - 1; i >= 0; --i) {
      idx[i] = k % patterns[i].size();
      k /= patterns[i].size();
    }
    return idx;
  };
  auto build = [&](const std::vector<std::size_t>& idx) {
    BangBangSchedule s;
    for (int i = 0; i < m; ++i)
      s.channels.push_back(to_schedule(patterns[i][idx[i]], G, T, problem.channels[i].u_max));
    return s;
  };
  const double budget_cap = problem.budget * (1.0 + 1e-12) + 1e-15;

  auto score = [&](std::size_t k, bool extreme_only) -> std::optional<double> {
    const auto idx = decode(k);
    double spend = 0.0;
    for (int i = 0; i < m; ++i) {
      if (extreme_only && patterns[i][idx[i]].interior) return std::nullopt;
      spend += cost[i][idx[i]];
    }
    if (spend > budget_cap) return std::nullopt;
    if (linear) {
      double g = 0.0;
      for (int i = 0; i < m; ++i) g += gain[i][idx[i]];
      return g;
    }
    const Trajectory traj = simulate(problem, build(idx), spec.steps);
    return objective_value(problem.objective, traj.terminal());
  };

  const kernels::ArgMax all =
      kernels::omp::argmax_feasible(total, [&](std::size_t k) { return score(k, false); });
  if (!all.found) throw NumericalError("enumerate_best: no budget-feasible candidate");
  result.feasible = all.feasible;
  const auto best_idx = decode(all.index);
  result.best = build(best_idx);
  result.value = all.value;
  for (int i = 0; i < m; ++i) result.best_is_interior |= patterns[i][best_idx[i]].interior;

  if (result.best_is_interior) {
    const kernels::ArgMax ext =
        kernels::omp::argmax_feasible(total, [&](std::size_t k) { return score(k, true); });
    result.best_extreme = build(decode(ext.index));
    result.best_extreme_value = ext.value;
  } else {
    result.best_extreme = result.best;
    result.best_extreme_value = result.value;
  }
  return result;
}

double grid_slack(const CampaignProblem& problem, const std::vector<ChannelProfile>& profiles,
                  int switch_grid) {
  double slack = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto samples = kernels::omp::sample_signal(profiles[i], 1.0, 4096);
    double peak = 0.0;
    for (double s : samples) peak = std::max(peak, std::abs(s));
    slack = std::max(slack, problem.channels[i].u_max * peak * problem.horizon / switch_grid);
  }
  return slack;
}

}  // namespace wavefill
