#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wavefill/dynamics.hpp"
#include "wavefill/errors.hpp"
#include "wavefill/waterfill.hpp"

namespace wavefill {
namespace {

CampaignProblem k2_problem(double budget = 0.5) {
  CampaignProblem p;
  p.graph = {2, {{0, 1, 1.0}}};
  p.channels = {{Eigen::Vector2d(1.0, 0.0), {}, 1.0}};
  p.objective.p = Eigen::Vector2d(0.0, 1.0);
  p.horizon = 1.0;
  p.budget = budget;
  p.x0 = Eigen::Vector2d::Zero();
  return p;
}

ChannelProfile constant_profile(double value, double T) { return {0, T, {{0.0, value}}, 0}; }

const double kBetaK2 = 0.5 - 0.5 * std::exp(-1.0);

TEST(ThresholdProfile, Scaling) {
  const auto flat = constant_profile(1.0, 1.0);
  EXPECT_DOUBLE_EQ(threshold_profile(flat, {Eigen::Vector2d(1, 0), {CostKind::kLinear, 2.0}, 1.0})(0.3),
                   0.5);
  EXPECT_DOUBLE_EQ(threshold_profile(flat, {Eigen::Vector2d(1, 0), {CostKind::kPower, 1.0, 0.5}, 4.0})(0.3),
                   2.0);
}

TEST(ThresholdProfile, LateLimitIsTargeting) {
  const auto sol = solve(k2_problem());
  EXPECT_NEAR(sol.signals[0](1.0), 0.0, 1e-15);  // <p, b> / v = 0
}

TEST(OnSet, ConstantSignal) {
  const ThresholdSignal g{constant_profile(1.0, 2.0), 1.0};
  const auto on = on_set(g, 0.5, 4096);
  ASSERT_EQ(on.size(), 1u);
  EXPECT_EQ(on[0], (Interval{0.0, 2.0}));
  EXPECT_TRUE(on_set(g, 2.0, 4096).empty());
  EXPECT_TRUE(on_set(g, 1.0, 4096).empty());  // equality counts as off
}

TEST(OnSet, K2WorkedCase) {
  const auto sol = solve(k2_problem());
  const auto on = on_set(sol.signals[0], kBetaK2, scan_resolution(2));
  ASSERT_EQ(on.size(), 1u);
  EXPECT_EQ(on[0].start, 0.0);
  EXPECT_NEAR(on[0].end, 0.5, 1e-11);
}

TEST(SpendForBeta, Examples) {
  const auto sol = solve(k2_problem());
  const std::vector<SampledSignal> g{sample_signal(sol.signals[0], 4096)};
  const auto& ch = k2_problem().channels;
  EXPECT_EQ(spend_for_beta(ch, g, 1.0), 0.0);
  EXPECT_NEAR(spend_for_beta(ch, g, kBetaK2), 0.5, 1e-11);
  // h > 0 on [0, 1) and h(1) = 0 (off by the tie-break), so beta = 0 spends T.
  EXPECT_NEAR(spend_for_beta(ch, g, 0.0), 1.0, 1e-11);
}

TEST(Solve, K2ClosedForm) {
  const auto sol = solve(k2_problem());
  EXPECT_NEAR(sol.beta_star, kBetaK2, 1e-9);
  EXPECT_TRUE(sol.binding);
  ASSERT_EQ(sol.schedule.channels.size(), 1u);
  ASSERT_EQ(sol.schedule.channels[0].on.size(), 1u);
  EXPECT_EQ(sol.schedule.channels[0].on[0].start, 0.0);
  EXPECT_NEAR(sol.schedule.channels[0].on[0].end, 0.5, 1e-9);
  EXPECT_NEAR(sol.spend, 0.5, 1e-9);
  EXPECT_EQ(sol.schedule.channels[0].level, 1.0);
  // integral of 1/2 - 1/2 e^{2(t-1)} over [0, 1/2]
  EXPECT_NEAR(sol.objective_gain, 0.25 - 0.25 * (std::exp(-1.0) - std::exp(-2.0)), 1e-9);
  EXPECT_EQ(sol.certificate.channels[0].realized_switches, 1);
  EXPECT_EQ(sol.certificate.channels[0].bound_linear_at, 1);
  EXPECT_FALSE(sol.certificate.certified);  // linear cost: (L, Lb) never controllable
  EXPECT_EQ(sol.certificate.note, "structure not certified");
}

TEST(Solve, SaturatedBudgetIsNotBinding) {
  CampaignProblem p = k2_problem(10.0);
  p.channels[0].b = Eigen::Vector2d(1.0, 0.5);
  p.objective.p = Eigen::Vector2d(0.3, 1.0);
  const auto sol = solve(p);
  EXPECT_EQ(sol.beta_star, 0.0);
  EXPECT_FALSE(sol.binding);
  ASSERT_EQ(sol.schedule.channels[0].on.size(), 1u);
  EXPECT_EQ(sol.schedule.channels[0].on[0], (Interval{0.0, 1.0}));
}

TEST(Solve, Contracts) {
  CampaignProblem p = k2_problem();
  p.objective = {ObjectiveKind::kSigmoid, Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1),
                 Eigen::Vector2d(0, 0)};
  EXPECT_THROW(solve(p), ContractError);
  CampaignProblem q = k2_problem();
  q.budget = 0.0;
  EXPECT_THROW(solve(q), ValidationError);
}

TEST(Solve, FlatProfileReportsBracket) {
  CampaignProblem p = k2_problem();
  p.channels[0].b = Eigen::Vector2d(1.0, 1.0);  // h constant, spend jumps from T to 0
  try {
    solve(p);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("bracket"), std::string::npos);
  }
}

class RandomProblems : public ::testing::TestWithParam<bool> {};

TEST_P(RandomProblems, Invariants) {
  Rng rng(GetParam() ? 101 : 202);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(9));
    const int m = 1 + static_cast<int>(rng.below(3));
    const auto p = testing::random_linear_problem(n, m, rng, GetParam());
    WaterfillSolution sol;
    try {
      sol = solve(p);
    } catch (const NumericalError&) {
      continue;  // flat profile; covered above
    }
    const double r = p.budget;
    EXPECT_LE(sol.spend, r * (1 + 1e-6));
    EXPECT_EQ(sol.binding, sol.beta_star > 0.0);
    if (sol.binding) EXPECT_LE(std::abs(sol.spend - r), 1e-6 * r);
    for (int i = 0; i < m; ++i) {
      const auto& ch = sol.schedule.channels[i];
      EXPECT_EQ(ch.level, p.channels[i].u_max);
      EXPECT_TRUE(well_formed(ch, p.horizon));
      for (double t = 0.0; t < p.horizon; t += p.horizon / 97) {
        const double u = ch.control_at(t);
        EXPECT_TRUE(u == 0.0 || u == p.channels[i].u_max);
      }
      const auto& c = sol.certificate.channels[i];
      EXPECT_TRUE(c.conforms) << "trial " << trial << " channel " << i;
      EXPECT_LE(c.realized_switches, c.bound_linear_at);
      EXPECT_LE(c.bound_linear_at, n - 1);
      EXPECT_LE(c.realized_switches, c.bound_general);
    }
    // Spend is non-increasing in beta.
    std::vector<SampledSignal> g;
    for (const auto& s : sol.signals) g.push_back(sample_signal(s, 4096));
    double prev = spend_for_beta(p.channels, g, 0.0);
    double top = 0.0;
    for (const auto& s : g) top = std::max(top, s.max_sample());
    for (int k = 1; k <= 40; ++k) {
      const double spend = spend_for_beta(p.channels, g, top * k / 40.0);
      EXPECT_LE(spend, prev + 1e-12);
      prev = spend;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(CostKinds, RandomProblems, ::testing::Values(false, true));

TEST(Solve, OpenLoopInvariance) {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = testing::random_linear_problem(5, 2, rng, true);
    WaterfillSolution a;
    try {
      a = solve(p);
    } catch (const NumericalError&) {
      continue;
    }
    for (int j = 0; j < 5; ++j) p.x0[j] = rng.uniform(-5, 5);
    p.drift.breakpoints = {0.0, 0.3 * p.horizon};
    p.drift.values = {Eigen::VectorXd::Constant(5, 0.2), Eigen::VectorXd::LinSpaced(5, -1, 1)};
    const auto b = solve(p);
    EXPECT_EQ(a.beta_star, b.beta_star);
    EXPECT_EQ(a.schedule, b.schedule);
  }
}

TEST(Solve, Deterministic) {
  Rng rng(5);
  const auto p = testing::random_linear_problem(7, 2, rng, true);
  const auto a = solve(p), b = solve(p);
  EXPECT_EQ(a.beta_star, b.beta_star);
  EXPECT_EQ(a.schedule, b.schedule);
}

}  // namespace
}  // namespace wavefill
