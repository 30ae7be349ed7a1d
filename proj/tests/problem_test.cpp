#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wavefill/dynamics.hpp"
#include "wavefill/problem.hpp"

namespace wavefill {
namespace {

CampaignProblem k2_problem(Eigen::Vector2d b, CostModel cost = {}) {
  CampaignProblem p;
  p.graph = {2, {{0, 1, 1.0}}};
  p.channels = {{b, cost, 1.0}};
  p.objective.p = Eigen::Vector2d(0.0, 1.0);
  p.horizon = 1.0;
  p.budget = 0.5;
  p.x0 = Eigen::Vector2d::Zero();
  return p;
}

bool has_message(const std::vector<Finding>& fs, const std::string& text) {
  for (const auto& f : fs)
    if (f.message.find(text) != std::string::npos) return true;
  return false;
}

TEST(Validate, WellFormedHasNoFindings) {
  EXPECT_TRUE(validate_problem(k2_problem({1.0, 0.0})).empty());
}

TEST(Validate, EmptyReach) {
  EXPECT_TRUE(has_message(validate_problem(k2_problem({0.0, 0.0})), "channel has empty reach"));
}

TEST(Validate, ZeroBudget) {
  auto p = k2_problem({1.0, 0.0});
  p.budget = 0.0;
  EXPECT_TRUE(has_message(validate_problem(p), "budget must be positive"));
}

TEST(Validate, ReportsEveryFinding) {
  auto p = k2_problem({1.0, 0.0});
  p.budget = -1.0;
  p.horizon = 0.0;
  p.x0 = Eigen::Vector3d::Zero();
  p.objective.p = Eigen::Vector2d(-1.0, 0.0);
  p.channels[0].u_max = 0.0;
  p.channels[0].cost = {CostKind::kPower, 1.0, 1.5};
  p.drift.breakpoints = {0.5, 0.2};
  p.drift.values = {Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()};
  const auto fs = validate_problem(p);
  std::vector<std::string> fields;
  for (const auto& f : fs) fields.push_back(f.field);
  for (const char* want : {"r", "T", "x0", "objective.p", "channels[0].u_max",
                           "channels[0].cost.a", "drift"}) {
    bool found = false;
    for (const auto& f : fields) found |= f.rfind(want, 0) == 0;
    EXPECT_TRUE(found) << want;
  }
}

TEST(Validate, GraphFindingsPropagate) {
  auto p = k2_problem({1.0, 0.0});
  p.graph = {2, {}};
  EXPECT_TRUE(has_message(validate_problem(p), "disconnected"));
}

TEST(CostModel, ZeroAtZeroAndMonotone) {
  for (const CostModel c : {CostModel{CostKind::kLinear, 2.0, 1.0},
                            CostModel{CostKind::kPower, 1.0, 0.5},
                            CostModel{CostKind::kPower, 3.0, 0.1}}) {
    EXPECT_EQ(c(0.0), 0.0);
    double prev = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double v = c(4.0 * k / 100);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
  EXPECT_DOUBLE_EQ((CostModel{CostKind::kPower, 1.0, 0.5})(4.0), 2.0);
}

TEST(Conditions, K2LinearCostIsNotControllable) {
  // [L b | L^2 b] = [(1, -1), (2, -2)] has rank 1.
  const auto p = k2_problem({1.0, 0.0});
  const auto report = check_conditions(p, build_laplacian(p.graph));
  ASSERT_EQ(report.channels.size(), 1u);
  EXPECT_EQ(report.channels[0].controllability_rank, 1);
  EXPECT_FALSE(report.channels[0].controllable);
  EXPECT_TRUE(report.channels[0].controllable_on_disagreement);
  EXPECT_FALSE(report.channels[0].theorem_applicable);
  EXPECT_FALSE(report.all_applicable());
}

TEST(Conditions, PowerCostNeedsTotalReach) {
  const CostModel root{CostKind::kPower, 1.0, 0.5};
  auto reach = check_conditions(k2_problem({1.0, 1.0}, root), build_laplacian({2, {{0, 1, 1.0}}}));
  EXPECT_DOUBLE_EQ(reach.channels[0].total_reach, 2.0);
  EXPECT_TRUE(reach.channels[0].theorem_applicable);
  auto none = check_conditions(k2_problem({1.0, -1.0}, root), build_laplacian({2, {{0, 1, 1.0}}}));
  EXPECT_DOUBLE_EQ(none.channels[0].total_reach, 0.0);
  EXPECT_FALSE(none.channels[0].theorem_applicable);
}

TEST(Conditions, KrylovRankNeverExceedsNMinusOne) {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 12;
    const auto g = testing::random_connected_graph(n, 0.3, rng);
    Eigen::VectorXd b(n);
    for (int j = 0; j < n; ++j) b[j] = rng.normal();
    const int rank = controllability_rank(build_laplacian(g), b);
    EXPECT_LE(rank, n - 1);
    EXPECT_GE(rank, 1);
  }
}

TEST(Conditions, FlagsArePureFunctions) {
  Rng rng(8);
  const auto p = testing::random_linear_problem(6, 2, rng, true);
  const auto L = build_laplacian(p.graph);
  const auto a = check_conditions(p, L), b = check_conditions(p, L);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a.channels[i].controllability_rank, b.channels[i].controllability_rank);
    EXPECT_EQ(a.channels[i].theorem_applicable, b.channels[i].theorem_applicable);
    EXPECT_EQ(a.channels[i].theorem_applicable, a.channels[i].reach_nonzero);
  }
}

TEST(Objective, SigmoidIsBounded) {
  Objective o{ObjectiveKind::kSigmoid, Eigen::Vector3d(1.0, 0.5, 2.0),
              Eigen::Vector3d(1.0, 10.0, 200.0), Eigen::Vector3d(0.0, 0.3, -1.0)};
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    Eigen::Vector3d x;
    for (int j = 0; j < 3; ++j) x[j] = rng.uniform(-1e3, 1e3);
    const double J = objective_value(o, x);
    EXPECT_GE(J, 0.0);
    EXPECT_LE(J, 3.5);
  }
  EXPECT_NEAR(objective_value(o, o.theta), 1.75, 1e-15);
  EXPECT_NEAR(objective_value(o, Eigen::Vector3d::Constant(1e300)), 3.5, 1e-15);
}

}  // namespace
}  // namespace wavefill
