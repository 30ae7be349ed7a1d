#include "wavefill/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "wavefill/errors.hpp"
#include "wavefill/graph.hpp"

namespace wavefill {

namespace {

std::vector<double> integration_grid(const CampaignProblem& problem,
                                     const BangBangSchedule& schedule, int steps) {
  const double T = problem.horizon;
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) nodes.push_back(k == steps ? T : T * k / steps);
  for (double t : switch_times(schedule))
    if (t > 0.0 && t < T) nodes.push_back(t);
  for (double t : problem.drift.breakpoints)
    if (t > 0.0 && t < T) nodes.push_back(t);
  std::sort(nodes.begin(), nodes.end());
  // Nodes closer than this are merged; the control timing error this
  // introduces is far below the integrator's truncation error.
  const double merge_tol = 1e-12 * T;
  std::vector<double> out;
  for (double t : nodes) {
    if (!out.empty() && t - out.back() <= merge_tol) {
      if (t == T) out.back() = T;
      continue;
    }
    out.push_back(t);
  }
  return out;
}

double spent_until(const CampaignProblem& problem, const BangBangSchedule& schedule, double t) {
  double total = 0.0;
  for (std::size_t i = 0; i < schedule.channels.size(); ++i) {
    const auto& ch = schedule.channels[i];
    double on = 0.0;
    for (const Interval& iv : ch.on) on += std::max(0.0, std::min(iv.end, t) - iv.start);
    total += problem.channels[i].cost(ch.level) * on;
  }
  return total;
}

}  // namespace

Trajectory simulate(const CampaignProblem& problem, const BangBangSchedule& schedule, int steps) {
  if (steps < 64) throw ContractError("simulate: steps must be at least 64");
  if (schedule.channels.size() != problem.channels.size())
    throw ContractError("simulate: schedule and problem disagree on the channel count");
  for (const auto& ch : schedule.channels)
    if (!well_formed(ch, problem.horizon * (1.0 + 1e-12)))
      throw ContractError("simulate: schedule intervals must be sorted, disjoint and within [0, T]");

  const Laplacian L = build_laplacian(problem.graph);
  const Eigen::MatrixXd& A = L.matrix;
  const int n = problem.n();
  const auto nodes = integration_grid(problem, schedule, steps);

  Trajectory traj;
  traj.times = nodes;
  traj.states.reserve(nodes.size());
  traj.spend.reserve(nodes.size());
  Eigen::VectorXd x = problem.x0;
  traj.states.push_back(x);
  traj.spend.push_back(0.0);

  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double t0 = nodes[k];
    const double h = nodes[k + 1] - t0;
    const double mid = t0 + 0.5 * h;
    // Controls and drift are constant on every cell by construction.
    Eigen::VectorXd forcing = problem.drift.at(mid, n);
    for (std::size_t i = 0; i < schedule.channels.size(); ++i) {
      const double u = schedule.channels[i].control_at(mid);
      if (u != 0.0) forcing += u * problem.channels[i].b;
    }
    const Eigen::VectorXd k1 = -(A * x) + forcing;
    const Eigen::VectorXd k2 = -(A * (x + 0.5 * h * k1)) + forcing;
    const Eigen::VectorXd k3 = -(A * (x + 0.5 * h * k2)) + forcing;
    const Eigen::VectorXd k4 = -(A * (x + h * k3)) + forcing;
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.states.push_back(x);
    traj.spend.push_back(spent_until(problem, schedule, nodes[k + 1]));
  }
  return traj;
}

double objective_value(const Objective& obj, const Eigen::VectorXd& xT) {
  if (xT.size() != obj.p.size()) throw ContractError("objective_value: dimension mismatch");
  if (obj.kind == ObjectiveKind::kLinear) return obj.p.dot(xT);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < xT.size(); ++i) {
    const double w = obj.alpha[i] * (xT[i] - obj.theta[i]);
    // Logistic evaluated on the side where exp cannot overflow.
    const double sig = w >= 0.0 ? 1.0 / (1.0 + std::exp(-w)) : std::exp(w) / (1.0 + std::exp(w));
    sum += obj.p[i] * sig;
  }
  return sum;
}

double integrate_h(const ChannelProfile& profile, double a, double b) {
  const double T = profile.horizon;
  double sum = 0.0;
  for (const Mode& m : profile.modes) {
    if (m.rate == 0.0) {
      sum += m.coeff * (b - a);
    } else {
      // e^{xi(b-T)} - e^{xi(a-T)} = e^{xi(a-T)} expm1(xi (b - a))
      sum += m.coeff / m.rate * std::exp(m.rate * (a - T)) * std::expm1(m.rate * (b - a));
    }
  }
  return sum;
}

double closed_form_gain(const std::vector<ChannelProfile>& profiles,
                        const BangBangSchedule& schedule) {
  if (profiles.size() != schedule.channels.size())
    throw ContractError("closed_form_gain: one profile per channel is required");
  double gain = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& ch = schedule.channels[i];
    double integral = 0.0;
    for (const Interval& iv : ch.on) integral += integrate_h(profiles[i], iv.start, iv.end);
    gain += ch.level * integral;
  }
  return gain;
}

}  // namespace wavefill
