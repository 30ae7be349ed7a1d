#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wavefill/graph.hpp"
#include "wavefill/problem.hpp"

namespace wavefill {

/// Lambda(T): sensitivity of the terminal objective to the terminal state.
struct TerminalCostate {
  Eigen::VectorXd lam;
};

/// Linear objective: Lambda(T) = p, no state needed. Sigmoid objective:
/// lambda_i = p_i alpha_i z / (1 + z)^2 with z = exp(-alpha_i (x_i(T) - theta_i));
/// requires `xT` (ContractError otherwise).
TerminalCostate terminal_costate(const Objective& obj,
                                 const std::optional<Eigen::VectorXd>& xT = std::nullopt);

/// One exponential mode of h(t) = sum_g coeff_g * exp(rate_g * (t - T)).
struct Mode {
  double rate = 0.0;
  double coeff = 0.0;
};

/// Closed form of the cost-effectiveness signal h_i(t) = <Lambda(t), b_i>.
/// Modes are grouped by distinct eigenvalue (eigenspace projections, so the
/// result does not depend on the eigenvector basis inside an eigenspace) and
/// sorted by strictly increasing rate. The kernel mode, when present, has
/// rate exactly 0.
struct ChannelProfile {
  int channel = 0;
  double horizon = 1.0;
  std::vector<Mode> modes;
  int dropped = 0;  // spectrally silent groups below coeff_tol

  /// Coefficient of the rate-0 mode (0 when absent).
  double constant_coeff() const;
};

double coeff_tolerance(const Eigen::VectorXd& lam, const Eigen::VectorXd& b);

ChannelProfile channel_profile(const SpectralDecomposition& sd, const TerminalCostate& lamT,
                               const Eigen::VectorXd& b, double horizon, int channel = 0);

/// h(t) = sum_g d_g exp(xi_g (t - T)).
double eval_h(const ChannelProfile& profile, double t);

/// dh/dt.
double eval_h_derivative(const ChannelProfile& profile, double t);

/// Backward RK4 integration of dLambda/dt = L^T Lambda from Lambda(T), with
/// `substeps` equal RK4 steps between consecutive grid points. Returns
/// Lambda at every grid point (same order as `grid`, which must be
/// ascending and end at T). Independent of the spectral route; used as its
/// oracle.
std::vector<Eigen::VectorXd> adjoint_check(const Laplacian& L, const TerminalCostate& lamT,
                                           const std::vector<double>& grid, int substeps = 1);

}  // namespace wavefill
