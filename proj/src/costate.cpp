#include "wavefill/costate.hpp"

#include <cmath>

#include "wavefill/errors.hpp"

namespace wavefill {

TerminalCostate terminal_costate(const Objective& obj, const std::optional<Eigen::VectorXd>& xT) {
  if (obj.kind == ObjectiveKind::kLinear) return {obj.p};
  if (!xT) throw ContractError("terminal_costate: sigmoid objective requires the terminal state");
  const Eigen::Index n = obj.p.size();
  if (xT->size() != n || obj.alpha.size() != n || obj.theta.size() != n)
    throw ContractError("terminal_costate: dimension mismatch");
  TerminalCostate out{Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    // z/(1+z)^2 is symmetric in the exponent's sign; evaluating it with
    // exp(-|w|) never overflows and underflows cleanly to 0.
    const double w = obj.alpha[i] * ((*xT)[i] - obj.theta[i]);
    const double z = std::exp(-std::abs(w));
    out.lam[i] = obj.p[i] * obj.alpha[i] * z / ((1.0 + z) * (1.0 + z));
  }
  return out;
}

double ChannelProfile::constant_coeff() const {
  if (!modes.empty() && modes.front().rate == 0.0) return modes.front().coeff;
  return 0.0;
}

double coeff_tolerance(const Eigen::VectorXd& lam, const Eigen::VectorXd& b) {
  return 1e-10 * std::max(1.0, lam.norm() * b.norm());
}

ChannelProfile channel_profile(const SpectralDecomposition& sd, const TerminalCostate& lamT,
                               const Eigen::VectorXd& b, double horizon, int channel) {
  const int n = sd.n();
  if (lamT.lam.size() != n || b.size() != n)
    throw ContractError("channel_profile: dimension mismatch");
  ChannelProfile prof;
  prof.channel = channel;
  prof.horizon = horizon;
  const double tol = coeff_tolerance(lamT.lam, b);
  for (std::size_t g = 0; g < sd.groups.size(); ++g) {
    double d;
    if (g == 0) {
      // Kernel eigenspace is spanned by 1/sqrt(n).
      d = lamT.lam.sum() * b.sum() / static_cast<double>(n);
    } else {
      d = sd.projected_product(g, lamT.lam, b);
    }
    if (std::abs(d) <= tol) {
      ++prof.dropped;
      continue;
    }
    prof.modes.push_back({sd.groups[g].rate, d});
  }
  return prof;
}

double eval_h(const ChannelProfile& profile, double t) {
  const double s = t - profile.horizon;
  double sum = 0.0;
  for (const Mode& m : profile.modes) sum += m.coeff * std::exp(m.rate * s);
  return sum;
}

double eval_h_derivative(const ChannelProfile& profile, double t) {
  const double s = t - profile.horizon;
  double sum = 0.0;
  for (const Mode& m : profile.modes) sum += m.coeff * m.rate * std::exp(m.rate * s);
  return sum;
}

std::vector<Eigen::VectorXd> adjoint_check(const Laplacian& L, const TerminalCostate& lamT,
                                           const std::vector<double>& grid, int substeps) {
  if (grid.size() < 2) throw ContractError("adjoint_check: grid needs at least two points");
  if (substeps < 1) throw ContractError("adjoint_check: substeps must be positive");
  // L is symmetric, so L^T = L.
  const Eigen::MatrixXd& A = L.matrix;
  std::vector<Eigen::VectorXd> out(grid.size());
  Eigen::VectorXd y = lamT.lam;
  out.back() = y;
  for (std::size_t k = grid.size() - 1; k > 0; --k) {
    const double h = -(grid[k] - grid[k - 1]) / substeps;
    for (int s = 0; s < substeps; ++s) {
      const Eigen::VectorXd k1 = A * y;
      const Eigen::VectorXd k2 = A * (y + 0.5 * h * k1);
      const Eigen::VectorXd k3 = A * (y + 0.5 * h * k2);
      const Eigen::VectorXd k4 = A * (y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out[k - 1] = y;
  }
  return out;
}

}  // namespace wavefill
