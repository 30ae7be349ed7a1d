#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wavefill/costate.hpp"
#include "wavefill/graph.hpp"

namespace wavefill {

/// One less than the number of distinct-eigenvalue groups onto which `b`
/// has a nonzero projection, floored at 0.
int bound_general(const SpectralDecomposition& sd, const Eigen::VectorXd& b);

/// Sign variations of a sequence, skipping entries with |x| <= zero_tol.
int sign_variations(std::span<const double> seq, double zero_tol = 0.0);

/// Partial sums of the group-aggregated coefficients of h, ordered by
/// increasing rate (kernel mode first, as 0 if absent), before any shift.
std::vector<double> partial_sums(const ChannelProfile& profile);

/// Shift-aware linear-objective bound: sign variations of the partial sums of
/// (d_0 - shift, d_2, d_3, ...). Without a shift, the supremum over all
/// shifts >= 0.
int bound_linear(const SpectralDecomposition& sd, const Eigen::VectorXd& p,
                 const Eigen::VectorXd& b, std::optional<double> shift);

/// Same as bound_linear, from an already built profile (costate = p).
int bound_linear_at(const ChannelProfile& profile, double shift);
int bound_linear_sup(const ChannelProfile& profile);

/// Counted zeros of f(t) = sum_g coeffs[g] * exp(rates[g] * t) on a window.
struct ZeroCount {
  int count = 0;          // with multiplicity (tangential zeros count twice)
  int tangential = 0;     // number of even-order zeros detected
  std::vector<double> locations;
};

/// Grid scan of `resolution` points, bisection of each bracketed sign change
/// to 1e-12, and a derivative sign test for tangential zeros. ContractError
/// when every coefficient is zero.
ZeroCount count_exp_poly_zeros(std::span<const double> rates, std::span<const double> coeffs,
                               double t_lo, double t_hi, int resolution = 4096);

struct ChannelBounds {
  int bound_general = 0;
  int bound_linear_unshifted = 0;
  std::optional<int> bound_linear_at;   // at the solved water level, when known
  int bound_linear_sup = 0;
};

struct SwitchBoundReport {
  std::vector<ChannelBounds> channels;
};

/// Every bound for every channel of a problem, with the costate Lambda(T) = p.
/// Given a water level, bound_linear_at uses shift beta * c(u_max) / u_max.
SwitchBoundReport switch_bounds(const CampaignProblem& problem, const SpectralDecomposition& sd,
                                std::optional<double> beta = std::nullopt);

}  // namespace wavefill
