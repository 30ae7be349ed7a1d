#pragma once

#include <string>
#include <vector>

#include "wavefill/costate.hpp"
#include "wavefill/graph.hpp"
#include "wavefill/problem.hpp"
#include "wavefill/schedule.hpp"

namespace wavefill {

/// g_i(t) = h_i(t) u_max / c(u_max): the cost-normalised signal compared
/// against the water level.
struct ThresholdSignal {
  ChannelProfile profile;
  double scale = 1.0;

  double operator()(double t) const { return scale * eval_h(profile, t); }
  double horizon() const { return profile.horizon; }
};

ThresholdSignal threshold_profile(const ChannelProfile& profile, const Channel& ch);

/// A signal together with its samples on a uniform grid of `intervals` cells.
struct SampledSignal {
  ThresholdSignal signal;
  int intervals = 0;
  std::vector<double> samples;

  double max_sample() const;
};

SampledSignal sample_signal(const ThresholdSignal& g, int intervals);

/// Grid resolution used for on-set scans: max(4096, 64 n).
int scan_resolution(int n);

/// {t in [0, T] : g(t) > beta} as sorted disjoint intervals. Crossings are
/// bracketed on the sample grid and refined by bisection to 1e-12 T; points
/// with g(t) == beta count as off.
std::vector<Interval> on_set(const SampledSignal& g, double beta);
std::vector<Interval> on_set(const ThresholdSignal& g, double beta, int resolution);

/// Total spend of the threshold schedule at level beta.
double spend_for_beta(const std::vector<Channel>& channels, const std::vector<SampledSignal>& g,
                      double beta);

struct ChannelCertificate {
  int realized_switches = 0;
  int crossing_bound = 0;  // distinct rates of h - shift with nonzero coefficient, minus one
  int bound_general = 0;
  int bound_linear_at = 0;  // shift-aware, at the solved level
  int bound_linear_sup = 0;
  bool theorem_applicable = false;
  bool conforms = true;     // realized <= min(bound_linear_at, bound_general, n - 1)
};

struct Certificate {
  std::vector<ChannelCertificate> channels;
  bool certified = false;   // every channel satisfies the structure hypotheses
  std::string note;         // "structure not certified" when any channel fails them
  int resolution = 0;       // grid intervals used by the final scan
};

struct BisectionStep {
  double beta = 0.0;
  double spend = 0.0;
};

struct WaterfillSolution {
  double beta_star = 0.0;
  BangBangSchedule schedule;
  double spend = 0.0;
  bool binding = false;
  double objective_gain = 0.0;
  Certificate certificate;
  std::vector<ChannelProfile> profiles;
  std::vector<ThresholdSignal> signals;
  std::vector<BisectionStep> iterates;
};

struct WaterfillOptions {
  int max_iterations = 200;
  double tolerance = 1e-9;  // relative to the budget
  int min_resolution = 0;   // 0: scan_resolution(n)
};

/// Exact water-filling for the linear objective (Lambda(T) = p). Throws
/// ContractError for a non-linear objective, ValidationError for an
/// ill-formed problem and NumericalError when bisection cannot meet the
/// budget.
WaterfillSolution solve(const CampaignProblem& problem, const WaterfillOptions& opts = {});

/// Water-filling against an arbitrary terminal costate; the building block
/// shared with the sigmoid approximation.
WaterfillSolution solve_with_costate(const CampaignProblem& problem, const Spectrum& spectrum,
                                     const TerminalCostate& lamT,
                                     const WaterfillOptions& opts = {});

}  // namespace wavefill
