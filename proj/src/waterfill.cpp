#include "wavefill/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavefill/bounds.hpp"
#include "wavefill/dynamics.hpp"
#include "wavefill/errors.hpp"
#include "wavefill/kernels.hpp"

namespace wavefill {

ThresholdSignal threshold_profile(const ChannelProfile& profile, const Channel& ch) {
  return {profile, ch.u_max / ch.cost(ch.u_max)};
}

double SampledSignal::max_sample() const {
  return samples.empty() ? 0.0 : *std::max_element(samples.begin(), samples.end());
}

SampledSignal sample_signal(const ThresholdSignal& g, int intervals) {
  return {g, intervals, kernels::omp::sample_signal(g.profile, g.scale, intervals)};
}

int scan_resolution(int n) { return std::max(4096, 64 * n); }

namespace {

double grid_time(const SampledSignal& g, int k) {
  const double T = g.signal.horizon();
  return k == g.intervals ? T : T * static_cast<double>(k) / g.intervals;
}

// Crossing of g(t) = beta inside [lo, hi] where `on(lo) != on(hi)`.
double refine_crossing(const ThresholdSignal& g, double beta, double lo, double hi) {
  const bool lo_on = g(lo) > beta;
  const double tol = 1e-12 * g.horizon();
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((g(mid) > beta) == lo_on) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<Interval> on_set(const SampledSignal& g, double beta) {
  std::vector<Interval> out;
  if (g.samples.empty()) return out;
  bool on = g.samples[0] > beta;
  double start = 0.0;
  for (int k = 0; k < g.intervals; ++k) {
    const bool next = g.samples[k + 1] > beta;
    if (next == on) continue;
    const double t = refine_crossing(g.signal, beta, grid_time(g, k), grid_time(g, k + 1));
    if (on) {
      if (t > start) out.push_back({start, t});
    } else {
      start = t;
    }
    on = next;
  }
  if (on) out.push_back({start, g.signal.horizon()});
  return out;
}

std::vector<Interval> on_set(const ThresholdSignal& g, double beta, int resolution) {
  return on_set(sample_signal(g, resolution), beta);
}

double spend_for_beta(const std::vector<Channel>& channels, const std::vector<SampledSignal>& g,
                      double beta) {
  double spend = 0.0;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    double on_time = 0.0;
    for (const Interval& iv : on_set(g[i], beta)) on_time += iv.length();
    spend += channels[i].full_cost_rate() * on_time;
  }
  return spend;
}

namespace {

struct LevelSearch {
  double beta = 0.0;
  double spend = 0.0;
  bool binding = false;
  std::vector<BisectionStep> iterates;
};

LevelSearch find_level(const CampaignProblem& problem, const std::vector<SampledSignal>& g,
                       const WaterfillOptions& opts) {
  const double r = problem.budget;
  LevelSearch out;
  const double spend0 = spend_for_beta(problem.channels, g, 0.0);
  out.iterates.push_back({0.0, spend0});
  if (spend0 <= r) {
    out.spend = spend0;
    return out;
  }
  out.binding = true;

  double top = 0.0;
  for (const auto& s : g) top = std::max(top, s.max_sample());
  double hi = top + 1e-9 * std::max(1.0, std::abs(top));
  double spend_hi = spend_for_beta(problem.channels, g, hi);
  for (int guard = 0; spend_hi > r && guard < 64; ++guard) {
    hi = 2.0 * hi + 1e-9;
    spend_hi = spend_for_beta(problem.channels, g, hi);
  }
  double lo = 0.0, spend_lo = spend0;
  out.iterates.push_back({hi, spend_hi});

  const double tol = opts.tolerance * r;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double spend = spend_for_beta(problem.channels, g, mid);
    out.iterates.push_back({mid, spend});
    if (std::abs(spend - r) <= tol) {
      out.beta = mid;
      out.spend = spend;
      return out;
    }
    if (spend > r) {
      lo = mid;
      spend_lo = spend;
    } else {
      hi = mid;
      spend_hi = spend;
    }
  }
  // Bracket exhausted: accept the feasible side if it is within the
  // complementary-slackness tolerance.
  if (std::abs(spend_hi - r) <= 1e-6 * r) {
    out.beta = hi;
    out.spend = spend_hi;
    return out;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "water-level bisection did not meet the budget: bracket [" << lo << ", " << hi
      << "] spends [" << spend_lo << ", " << spend_hi << "] against r = " << r
      << " (a flat cost-effectiveness profile makes the spend discontinuous)";
  throw NumericalError(msg.str());
}

int crossing_bound(const ChannelProfile& profile, double shift) {
  int modes = 0;
  const double tol = 1e-10 * std::max(1.0, std::abs(shift));
  bool has_constant = false;
  for (const Mode& m : profile.modes) {
    if (m.rate == 0.0) {
      has_constant = true;
      if (std::abs(m.coeff - shift) > tol) ++modes;
    } else {
      ++modes;
    }
  }
  if (!has_constant && std::abs(shift) > tol) ++modes;
  return std::max(0, modes - 1);
}

}  // namespace

WaterfillSolution solve_with_costate(const CampaignProblem& problem, const Spectrum& spectrum,
                                     const TerminalCostate& lamT, const WaterfillOptions& opts) {
  const int m = problem.m();
  const int n = problem.n();
  WaterfillSolution sol;
  for (int i = 0; i < m; ++i) {
    sol.profiles.push_back(channel_profile(spectrum.decomposition, lamT, problem.channels[i].b,
                                           problem.horizon, i));
    sol.signals.push_back(threshold_profile(sol.profiles.back(), problem.channels[i]));
  }

  int resolution = std::max(opts.min_resolution, scan_resolution(n));
  for (int attempt = 0;; ++attempt) {
    std::vector<SampledSignal> sampled;
    for (const auto& s : sol.signals) sampled.push_back(sample_signal(s, resolution));
    LevelSearch level = find_level(problem, sampled, opts);

    sol.beta_star = level.beta;
    sol.binding = level.binding;
    sol.iterates = std::move(level.iterates);
    sol.schedule.channels.clear();
    double spend = 0.0;
    bool violated = false;
    for (int i = 0; i < m; ++i) {
      ChannelSchedule ch{problem.channels[i].u_max, on_set(sampled[i], sol.beta_star)};
      spend += problem.channels[i].full_cost_rate() * ch.on_time();
      const double shift = sol.beta_star * problem.channels[i].unit_cost();
      if (switch_count(ch, problem.horizon) > crossing_bound(sol.profiles[i], shift))
        violated = true;
      sol.schedule.channels.push_back(std::move(ch));
    }
    sol.spend = spend;
    sol.certificate.resolution = resolution;
    if (!violated || attempt == 2) break;
    resolution *= 4;
  }

  const ConditionReport conditions = check_conditions(problem, spectrum.laplacian);
  sol.certificate.channels.clear();
  for (int i = 0; i < m; ++i) {
    const Channel& ch = problem.channels[i];
    const double shift = sol.beta_star * ch.unit_cost();
    ChannelCertificate c;
    c.realized_switches = switch_count(sol.schedule.channels[i], problem.horizon);
    c.crossing_bound = crossing_bound(sol.profiles[i], shift);
    c.bound_general = bound_general(spectrum.decomposition, ch.b);
    c.bound_linear_at = bound_linear_at(sol.profiles[i], shift);
    c.bound_linear_sup = bound_linear_sup(sol.profiles[i]);
    c.theorem_applicable = conditions.channels[i].theorem_applicable;
    c.conforms = c.realized_switches <= c.bound_linear_at &&
                 c.realized_switches <= c.bound_general && c.realized_switches <= n - 1;
    sol.certificate.channels.push_back(c);
  }
  sol.certificate.certified = conditions.all_applicable();
  sol.certificate.note = sol.certificate.certified ? "" : "structure not certified";
  sol.objective_gain = closed_form_gain(sol.profiles, sol.schedule);
  return sol;
}

namespace {

void throw_if_invalid(const CampaignProblem& problem) {
  const auto findings = validate_problem(problem);
  if (findings.empty()) return;
  std::string msg = "invalid problem:";
  for (const auto& f : findings) msg += " [" + f.field + "] " + f.message + ";";
  throw ValidationError(msg);
}

}  // namespace

WaterfillSolution solve(const CampaignProblem& problem, const WaterfillOptions& opts) {
  if (problem.objective.kind != ObjectiveKind::kLinear)
    throw ContractError("solve: water-filling is exact only for the linear objective; use "
                        "solve_sigmoid for the sigmoid objective");
  throw_if_invalid(problem);
  const Spectrum spectrum = analyze(problem.graph);
  return solve_with_costate(problem, spectrum, terminal_costate(problem.objective), opts);
}

}  // namespace wavefill
