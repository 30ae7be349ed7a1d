#include "wavefill/sigmoid.hpp"

#include <algorithm>
#include <cmath>

#include "wavefill/errors.hpp"

namespace wavefill {

LateDeciderSet late_deciders(const Eigen::VectorXd& xT, const Objective& obj, double epsilon) {
  if (obj.kind != ObjectiveKind::kSigmoid)
    throw ContractError("late_deciders: sigmoid objective required");
  if (!(epsilon > 0.0)) throw ContractError("late_deciders: epsilon must be positive");
  LateDeciderSet out{epsilon, {}};
  for (Eigen::Index j = 0; j < xT.size(); ++j)
    if (std::abs(xT[j] - obj.theta[j]) < epsilon) out.members.push_back(static_cast<int>(j));
  return out;
}

LateDeciderSet late_deciders(const Trajectory& traj, const Objective& obj, double epsilon) {
  return late_deciders(traj.terminal(), obj, epsilon);
}

TerminalCostate surrogate_costate(const LateDeciderSet& set, const Objective& obj) {
  TerminalCostate out{Eigen::VectorXd::Zero(obj.p.size())};
  for (int j : set.members) out.lam[j] = obj.alpha[j] * obj.p[j] / 2.0;
  return out;
}

TerminalCostate threshold_slope_costate(const Objective& obj) {
  return {obj.p.cwiseProduct(obj.alpha) / 4.0};
}

double default_epsilon(const Objective& obj) {
  std::vector<double> abs_theta(obj.theta.size());
  for (Eigen::Index i = 0; i < obj.theta.size(); ++i) abs_theta[i] = std::abs(obj.theta[i]);
  double median = 0.0;
  if (!abs_theta.empty()) {
    std::sort(abs_theta.begin(), abs_theta.end());
    const std::size_t mid = abs_theta.size() / 2;
    median = abs_theta.size() % 2 ? abs_theta[mid] : 0.5 * (abs_theta[mid - 1] + abs_theta[mid]);
  }
  return 0.05 * std::max(1.0, median);
}

SigmoidStep sigmoid_step(const CampaignProblem& problem, const Spectrum& spectrum,
                         const TerminalCostate& costate, double epsilon, int steps,
                         const WaterfillOptions& opts) {
  SigmoidStep step;
  step.solution = solve_with_costate(problem, spectrum, costate, opts);
  step.trajectory = simulate(problem, step.solution.schedule, steps);
  step.objective = objective_value(problem.objective, step.trajectory.terminal());
  step.late = late_deciders(step.trajectory, problem.objective, epsilon);
  return step;
}

SigmoidResult solve_sigmoid(const CampaignProblem& problem, const SigmoidOptions& opts) {
  if (problem.objective.kind != ObjectiveKind::kSigmoid)
    throw ContractError("solve_sigmoid: sigmoid objective required");
  if (opts.max_iters < 1) throw ContractError("solve_sigmoid: max_iters must be at least 1");
  const auto findings = validate_problem(problem);
  if (!findings.empty())
    throw ValidationError("invalid problem: [" + findings.front().field + "] " +
                          findings.front().message);

  SigmoidResult result;
  result.epsilon = opts.epsilon > 0.0 ? opts.epsilon : default_epsilon(problem.objective);
  const Spectrum spectrum = analyze(problem.graph);

  std::vector<LateDeciderSet> seen;
  TerminalCostate costate = threshold_slope_costate(problem.objective);
  std::vector<int> support(static_cast<std::size_t>(problem.n()));
  for (int j = 0; j < problem.n(); ++j) support[j] = j;

  for (int it = 0; it < opts.max_iters; ++it) {
    SigmoidStep step =
        sigmoid_step(problem, spectrum, costate, result.epsilon, opts.steps, opts.waterfill);
    result.log.push_back({it, support, step.late.members, step.solution.beta_star,
                          step.solution.spend, step.objective});
    result.iterates.push_back(std::move(step.solution));

    if (step.late.members.empty()) {
      result.no_late_deciders = true;
      result.note = "no late deciders - surrogate uninformative";
      break;
    }
    if (std::find(seen.begin(), seen.end(), step.late) != seen.end()) {
      result.repeated = true;
      break;
    }
    seen.push_back(step.late);
    costate = surrogate_costate(step.late, problem.objective);
    support = step.late.members;
  }

  for (std::size_t k = 1; k < result.log.size(); ++k)
    if (result.log[k].objective > result.log[result.best_iteration].objective)
      result.best_iteration = static_cast<int>(k);
  result.solution = result.iterates[result.best_iteration];
  return result;
}

}  // namespace wavefill
