#include "wavefill/problem.hpp"

#include <algorithm>
#include <cmath>

#include "wavefill/errors.hpp"

namespace wavefill {

double CostModel::operator()(double u) const {
  if (u <= 0.0) return 0.0;
  return kind == CostKind::kLinear ? v * u : v * std::pow(u, a);
}

Eigen::VectorXd Drift::at(double t, int n) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  if (it == breakpoints.begin()) return Eigen::VectorXd::Zero(n);
  return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

std::vector<Finding> validate_problem(const CampaignProblem& p) {
  std::vector<Finding> out;
  auto add = [&](std::string field, std::string msg) {
    out.push_back({std::move(field), std::move(msg)});
  };

  for (auto& msg : graph_findings(p.graph)) add("graph", msg);
  const int n = p.graph.n;

  if (p.channels.empty()) add("channels", "at least one channel is required");
  for (std::size_t k = 0; k < p.channels.size(); ++k) {
    const Channel& ch = p.channels[k];
    const std::string f = "channels[" + std::to_string(k) + "]";
    if (ch.b.size() != n) {
      add(f + ".b", "gain vector has length " + std::to_string(ch.b.size()) + ", expected " +
                        std::to_string(n));
    } else if (!all_finite(ch.b)) {
      add(f + ".b", "gain vector has non-finite entries");
    } else if (ch.b.cwiseAbs().maxCoeff() == 0.0) {
      add(f + ".b", "channel has empty reach");
    }
    if (!(ch.cost.v > 0.0) || !std::isfinite(ch.cost.v))
      add(f + ".cost.v", "cost rate must be positive and finite");
    if (ch.cost.kind == CostKind::kPower && !(ch.cost.a > 0.0 && ch.cost.a <= 1.0))
      add(f + ".cost.a", "power cost exponent must lie in (0, 1]");
    if (!(ch.u_max > 0.0) || !std::isfinite(ch.u_max))
      add(f + ".u_max", "effort ceiling must be positive and finite");
  }

  const Objective& obj = p.objective;
  if (obj.p.size() != n) {
    add("objective.p", "weight vector has length " + std::to_string(obj.p.size()) +
                           ", expected " + std::to_string(n));
  } else {
    if (!all_finite(obj.p) || obj.p.minCoeff() < 0.0)
      add("objective.p", "weights must be finite and non-negative");
    else if (obj.p.maxCoeff() <= 0.0)
      add("objective.p", "at least one weight must be positive");
  }
  if (obj.kind == ObjectiveKind::kSigmoid) {
    if (obj.alpha.size() != n)
      add("objective.alpha", "sharpness vector must have length " + std::to_string(n));
    else if (!all_finite(obj.alpha) || obj.alpha.minCoeff() <= 0.0)
      add("objective.alpha", "sharpness values must be positive");
    if (obj.theta.size() != n)
      add("objective.theta", "threshold vector must have length " + std::to_string(n));
    else if (!all_finite(obj.theta))
      add("objective.theta", "thresholds must be finite");
  }

  if (!(p.horizon > 0.0) || !std::isfinite(p.horizon)) add("T", "horizon must be positive");
  if (!(p.budget > 0.0) || !std::isfinite(p.budget)) add("r", "budget must be positive");
  if (p.x0.size() != n)
    add("x0", "initial state has length " + std::to_string(p.x0.size()) + ", expected " +
                  std::to_string(n));
  else if (!all_finite(p.x0))
    add("x0", "initial state has non-finite entries");

  const Drift& d = p.drift;
  if (d.breakpoints.size() != d.values.size()) {
    add("drift", "breakpoints and values must have equal length");
  } else {
    for (std::size_t k = 0; k < d.breakpoints.size(); ++k) {
      const double t = d.breakpoints[k];
      if (!(t >= 0.0 && t <= p.horizon))
        add("drift.breakpoints", "breakpoint " + std::to_string(k) + " lies outside [0, T]");
      if (k > 0 && !(t > d.breakpoints[k - 1]))
        add("drift.breakpoints", "breakpoints must be strictly increasing");
      if (d.values[k].size() != n)
        add("drift.values", "drift value " + std::to_string(k) + " must have length " +
                                std::to_string(n));
    }
  }
  return out;
}

int controllability_rank(const Laplacian& L, const Eigen::VectorXd& b) {
  const int n = L.n();
  Eigen::MatrixXd K(n, n);
  Eigen::VectorXd col = b;
  for (int k = 0; k < n; ++k) {
    col = L.matrix * col;
    // Column scaling preserves rank and keeps L^k b finite for large n.
    const double norm = col.norm();
    if (norm > 0.0) col /= norm;
    K.col(k) = col;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double threshold = 1e-9 * sv[0];
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > threshold) ++rank;
  return rank;
}

bool ConditionReport::all_applicable() const {
  return std::all_of(channels.begin(), channels.end(),
                     [](const ChannelConditions& c) { return c.theorem_applicable; });
}

ConditionReport check_conditions(const CampaignProblem& p, const Laplacian& L) {
  ConditionReport report;
  const int n = L.n();
  for (const Channel& ch : p.channels) {
    if (ch.b.size() != n) throw ContractError("check_conditions: gain vector length mismatch");
    ChannelConditions c;
    c.total_reach = ch.b.sum();
    c.reach_nonzero = std::abs(c.total_reach) > 1e-12 * std::max(1.0, ch.b.cwiseAbs().sum());
    c.controllability_rank = controllability_rank(L, ch.b);
    c.controllable = c.controllability_rank == n;
    c.controllable_on_disagreement = c.controllability_rank == n - 1;
    c.strictly_concave_cost = ch.cost.strictly_concave();
    c.theorem_applicable = c.strictly_concave_cost ? c.reach_nonzero : c.controllable;
    report.channels.push_back(c);
  }
  return report;
}

}  // namespace wavefill
