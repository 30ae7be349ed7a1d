#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavefill/graph.hpp"

namespace wavefill {

enum class CostKind { kLinear, kPower };

/// c(u) = v * u^a with a in (0, 1]; the linear kind is a = 1.
struct CostModel {
  CostKind kind = CostKind::kLinear;
  double v = 1.0;
  double a = 1.0;

  double exponent() const { return kind == CostKind::kLinear ? 1.0 : a; }
  double operator()(double u) const;
  bool strictly_concave() const { return exponent() < 1.0; }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct Channel {
  Eigen::VectorXd b;
  CostModel cost;
  double u_max = 1.0;

  /// Cost per unit time while the channel runs at u_max.
  double full_cost_rate() const { return cost(u_max); }
  /// Effort-normalised cost c(u_max) / u_max; the threshold on h is beta times this.
  double unit_cost() const { return cost(u_max) / u_max; }
};

enum class ObjectiveKind { kLinear, kSigmoid };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kLinear;
  Eigen::VectorXd p;
  Eigen::VectorXd alpha;  // sigmoid only
  Eigen::VectorXd theta;  // sigmoid only
};

/// Piecewise-constant exogenous drift: values[k] applies on
/// [breakpoints[k], breakpoints[k+1]) (the last one until T) and the drift is
/// zero before breakpoints[0].
struct Drift {
  std::vector<double> breakpoints;
  std::vector<Eigen::VectorXd> values;

  bool empty() const { return breakpoints.empty(); }
  /// Drift in force at time t (zero vector of size n when none applies).
  Eigen::VectorXd at(double t, int n) const;
};

struct CampaignProblem {
  WeightedGraph graph;
  std::vector<Channel> channels;
  Objective objective;
  double horizon = 1.0;  // T
  double budget = 1.0;   // r
  Eigen::VectorXd x0;
  Drift drift;

  int n() const { return graph.n; }
  int m() const { return static_cast<int>(channels.size()); }
};

struct Finding {
  std::string field;
  std::string message;
};

/// Every violated invariant; empty iff the problem is well formed.
std::vector<Finding> validate_problem(const CampaignProblem& p);

struct ChannelConditions {
  double total_reach = 0.0;
  bool reach_nonzero = false;
  int controllability_rank = 0;
  bool controllable = false;
  /// rank == n - 1: the most [Lb | ... | L^n b] can reach, since every column
  /// is orthogonal to the ones vector.
  bool controllable_on_disagreement = false;
  bool strictly_concave_cost = false;
  bool theorem_applicable = false;
};

struct ConditionReport {
  std::vector<ChannelConditions> channels;

  bool all_applicable() const;
};

/// Diagnostics for the bang-bang structure hypotheses: a strictly concave
/// channel needs nonzero total reach, a linear channel needs (L, L b)
/// controllable.
ConditionReport check_conditions(const CampaignProblem& p, const Laplacian& L);

/// Rank of [L b | L^2 b | ... | L^n b] by singular values with a threshold
/// relative to the largest one.
int controllability_rank(const Laplacian& L, const Eigen::VectorXd& b);

}  // namespace wavefill
