#include "wavefill/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "wavefill/errors.hpp"

namespace wavefill {

int bound_general(const SpectralDecomposition& sd, const Eigen::VectorXd& b) {
  if (b.size() != sd.n()) throw ContractError("bound_general: dimension mismatch");
  const double tol = 1e-10 * std::max(1.0, b.norm());
  int groups = 0;
  for (std::size_t g = 0; g < sd.groups.size(); ++g)
    if (std::sqrt(sd.projection_norm2(g, b)) > tol) ++groups;
  return std::max(0, groups - 1);
}

int sign_variations(std::span<const double> seq, double zero_tol) {
  int count = 0;
  int last = 0;
  for (double x : seq) {
    if (std::abs(x) <= zero_tol) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<double> partial_sums(const ChannelProfile& profile) {
  std::vector<double> coeffs;
  if (profile.modes.empty() || profile.modes.front().rate != 0.0) coeffs.push_back(0.0);
  for (const Mode& m : profile.modes) coeffs.push_back(m.coeff);
  std::vector<double> sums(coeffs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) sums[k] = acc += coeffs[k];
  return sums;
}

namespace {

double partial_sum_tol(std::span<const double> sums, double shift) {
  double scale = std::abs(shift);
  for (double s : sums) scale = std::max(scale, std::abs(s));
  return 1e-12 * std::max(1.0, scale);
}

int variations_after_shift(const std::vector<double>& sums, double shift) {
  std::vector<double> shifted(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) shifted[k] = sums[k] - shift;
  return sign_variations(shifted, partial_sum_tol(sums, shift));
}

}  // namespace

int bound_linear_at(const ChannelProfile& profile, double shift) {
  // Shifting the first coefficient shifts every partial sum.
  return variations_after_shift(partial_sums(profile), shift);
}

int bound_linear_sup(const ChannelProfile& profile) {
  const auto sums = partial_sums(profile);
  std::vector<double> levels = sums;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  int best = variations_after_shift(sums, 0.0);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double mid = 0.5 * (levels[k] + levels[k + 1]);
    if (mid >= 0.0) best = std::max(best, variations_after_shift(sums, mid));
  }
  if (!levels.empty()) {
    const double beyond = levels.back() + 1.0 + std::abs(levels.back());
    if (beyond >= 0.0) best = std::max(best, variations_after_shift(sums, beyond));
  }
  return best;
}

int bound_linear(const SpectralDecomposition& sd, const Eigen::VectorXd& p,
                 const Eigen::VectorXd& b, std::optional<double> shift) {
  if (p.size() != sd.n() || b.size() != sd.n())
    throw ContractError("bound_linear: dimension mismatch");
  // The horizon does not enter the coefficients.
  const ChannelProfile prof = channel_profile(sd, TerminalCostate{p}, b, 1.0);
  return shift ? bound_linear_at(prof, *shift) : bound_linear_sup(prof);
}

namespace {

struct ExpPoly {
  std::span<const double> rates;
  std::span<const double> coeffs;

  double value(double t) const {
    double s = 0.0;
    for (std::size_t g = 0; g < rates.size(); ++g) s += coeffs[g] * std::exp(rates[g] * t);
    return s;
  }
  double slope(double t) const {
    double s = 0.0;
    for (std::size_t g = 0; g < rates.size(); ++g)
      s += coeffs[g] * rates[g] * std::exp(rates[g] * t);
    return s;
  }
  double scale(double t) const {
    double s = 0.0;
    for (std::size_t g = 0; g < rates.size(); ++g) s += std::abs(coeffs[g]) * std::exp(rates[g] * t);
    return s;
  }
  int sign(double t) const {
    const double v = value(t);
    if (std::abs(v) <= 1e-13 * scale(t)) return 0;
    return v > 0.0 ? 1 : -1;
  }
};

template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ZeroCount count_exp_poly_zeros(std::span<const double> rates, std::span<const double> coeffs,
                               double t_lo, double t_hi, int resolution) {
  if (rates.size() != coeffs.size()) throw ContractError("count_exp_poly_zeros: size mismatch");
  if (std::none_of(coeffs.begin(), coeffs.end(), [](double c) { return c != 0.0; }))
    throw ContractError("count_exp_poly_zeros: all coefficients are zero");
  if (!(t_hi > t_lo) || !std::isfinite(t_lo) || !std::isfinite(t_hi))
    throw ContractError("count_exp_poly_zeros: window must be finite and non-empty");
  resolution = std::max(resolution, 2);

  const ExpPoly f{rates, coeffs};
  const double step = (t_hi - t_lo) / (resolution - 1);
  auto grid = [&](int k) { return k == resolution - 1 ? t_hi : t_lo + step * k; };
  const double tol = 1e-12;

  ZeroCount out;
  auto record_tangential = [&](double t) {
    out.count += 2;
    out.tangential += 1;
    out.locations.push_back(t);
  };

  // Sign pattern over the grid; numerically zero samples get sign 0.
  std::vector<int> sign(resolution);
  for (int k = 0; k < resolution; ++k) sign[k] = f.sign(grid(k));

  int last_k = -1;  // last grid index with a nonzero sign
  for (int k = 0; k < resolution; ++k) {
    if (sign[k] == 0) continue;
    if (last_k >= 0) {
      if (sign[k] != sign[last_k]) {
        double root;
        if (k == last_k + 1) {
          root = bisect([&](double t) { return f.value(t); }, grid(last_k), grid(k), tol);
        } else {
          root = 0.5 * (grid(last_k + 1) + grid(k - 1));
        }
        out.count += 1;
        out.locations.push_back(root);
      } else if (k > last_k + 1) {
        // A run of numerically zero samples between equal signs: even-order zero.
        record_tangential(0.5 * (grid(last_k + 1) + grid(k - 1)));
      } else {
        // Same sign at both ends of the cell: look for a local extremum that
        // touches zero.
        const double a = grid(last_k), b = grid(k);
        const double sa = f.slope(a), sb = f.slope(b);
        if ((sa > 0.0) != (sb > 0.0) && sa != 0.0 && sb != 0.0) {
          const double te = bisect([&](double t) { return f.slope(t); }, a, b, tol);
          const double fe = f.value(te);
          if (std::abs(fe) <= 1e-12 * f.scale(te)) {
            record_tangential(te);
          } else if ((fe > 0.0) != (sign[k] > 0)) {
            // Two simple zeros hidden inside one cell.
            out.count += 2;
            out.locations.push_back(bisect([&](double t) { return f.value(t); }, a, te, tol));
            out.locations.push_back(bisect([&](double t) { return f.value(t); }, te, b, tol));
          }
        }
      }
    }
    last_k = k;
  }
  std::sort(out.locations.begin(), out.locations.end());
  return out;
}

SwitchBoundReport switch_bounds(const CampaignProblem& problem, const SpectralDecomposition& sd,
                                std::optional<double> beta) {
  SwitchBoundReport report;
  const TerminalCostate lamT{problem.objective.p};
  for (int i = 0; i < problem.m(); ++i) {
    const Channel& ch = problem.channels[i];
    const ChannelProfile prof = channel_profile(sd, lamT, ch.b, problem.horizon, i);
    ChannelBounds cb;
    cb.bound_general = bound_general(sd, ch.b);
    cb.bound_linear_unshifted = bound_linear_at(prof, 0.0);
    if (beta) cb.bound_linear_at = bound_linear_at(prof, *beta * ch.unit_cost());
    cb.bound_linear_sup = bound_linear_sup(prof);
    report.channels.push_back(cb);
  }
  return report;
}

}  // namespace wavefill
