#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wavefill/costate.hpp"
#include "wavefill/problem.hpp"
#include "wavefill/schedule.hpp"

namespace wavefill {

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> spend;  // cumulative cost up to each time

  const Eigen::VectorXd& terminal() const { return states.back(); }
};

/// Forward RK4 integration of dx/dt = -L x + B u + e on `steps` uniform
/// cells, with every switch time and drift breakpoint inserted as a grid
/// node so no step straddles a discontinuity. Requires steps >= 64.
Trajectory simulate(const CampaignProblem& problem, const BangBangSchedule& schedule, int steps);

/// J(x(T)): <p, x> for the linear kind, sum p_i / (1 + exp(-alpha_i (x_i - theta_i)))
/// for the sigmoid kind.
double objective_value(const Objective& obj, const Eigen::VectorXd& xT);

/// Exact contribution of the schedule's controls to <Lambda(T), x(T)>: the
/// integral of level * h_i over each on-interval, from the profiles'
/// exponential modes. Independent of x0 and drift.
double closed_form_gain(const std::vector<ChannelProfile>& profiles,
                        const BangBangSchedule& schedule);

/// Integral of h over [a, b] in closed form.
double integrate_h(const ChannelProfile& profile, double a, double b);

}  // namespace wavefill
