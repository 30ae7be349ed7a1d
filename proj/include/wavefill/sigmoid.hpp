#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavefill/dynamics.hpp"
#include "wavefill/waterfill.hpp"

namespace wavefill {

/// Agents whose terminal opinion is strictly within epsilon of their threshold.
struct LateDeciderSet {
  double epsilon = 0.0;
  std::vector<int> members;  // ascending, 0-based

  friend bool operator==(const LateDeciderSet& a, const LateDeciderSet& b) {
    return a.members == b.members;
  }
};

LateDeciderSet late_deciders(const Eigen::VectorXd& xT, const Objective& obj, double epsilon);
LateDeciderSet late_deciders(const Trajectory& traj, const Objective& obj, double epsilon);

/// lambda_j = alpha_j p_j / 2 on the late deciders, 0 elsewhere.
TerminalCostate surrogate_costate(const LateDeciderSet& set, const Objective& obj);

/// Sigmoid slope at threshold, p_i alpha_i / 4: the iteration-0 linearisation.
TerminalCostate threshold_slope_costate(const Objective& obj);

/// 0.05 * max(1, median |theta_i|).
double default_epsilon(const Objective& obj);

struct SigmoidIteration {
  int iteration = 0;
  std::vector<int> costate_support;  // agents driving this iterate's costate (all for iteration 0)
  std::vector<int> late_deciders;    // late deciders of this iterate's own trajectory
  double beta_star = 0.0;
  double spend = 0.0;
  double objective = 0.0;            // true sigmoid objective of the simulated terminal state
};

struct SigmoidOptions {
  double epsilon = 0.0;  // <= 0: default_epsilon
  int max_iters = 10;
  int steps = 4096;      // simulation steps per iterate
  WaterfillOptions waterfill;
};

struct SigmoidResult {
  WaterfillSolution solution;     // best iterate by true objective
  int best_iteration = 0;
  double epsilon = 0.0;
  std::vector<SigmoidIteration> log;
  std::vector<WaterfillSolution> iterates;
  bool no_late_deciders = false;
  bool repeated = false;          // stopped because a late-decider set recurred
  std::string note;
};

/// One surrogate step: water-fill against the costate of `set`, simulate,
/// and report the iterate.
struct SigmoidStep {
  WaterfillSolution solution;
  Trajectory trajectory;
  double objective = 0.0;
  LateDeciderSet late;
};

SigmoidStep sigmoid_step(const CampaignProblem& problem, const Spectrum& spectrum,
                         const TerminalCostate& costate, double epsilon, int steps,
                         const WaterfillOptions& opts = {});

/// Late-decider fixed-point iteration: linearise at threshold, then
/// repeatedly simulate, reclassify and re-solve. Returns the iterate with
/// the best true objective. ContractError for a non-sigmoid objective.
SigmoidResult solve_sigmoid(const CampaignProblem& problem, const SigmoidOptions& opts = {});

}  // namespace wavefill
