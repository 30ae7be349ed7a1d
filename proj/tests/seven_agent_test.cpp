// Golden values for the bundled 7-agent problems. Set WAVEFILL_REGEN_GOLDEN=1
// to rewrite them after an intentional change.
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "wavefill/io.hpp"

namespace wavefill {
namespace {

const std::string kRoot = WAVEFILL_SOURCE_DIR;

io::Json golden(const std::string& name, const io::Json& fresh) {
  const std::string path = kRoot + "/tests/golden/" + name;
  if (std::getenv("WAVEFILL_REGEN_GOLDEN")) std::ofstream(path) << io::dump(fresh);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing golden file " + path);
  return io::Json::parse(in);
}

void expect_schedule_near(const io::Json& want, const BangBangSchedule& got, double tol) {
  const auto& chans = want["channels"];
  ASSERT_EQ(chans.size(), got.channels.size());
  for (std::size_t i = 0; i < got.channels.size(); ++i) {
    const auto& on = chans[i]["on_intervals"];
    ASSERT_EQ(on.size(), got.channels[i].on.size()) << "channel " << i;
    for (std::size_t k = 0; k < on.size(); ++k) {
      EXPECT_NEAR(on[k][0].get<double>(), got.channels[i].on[k].start, tol);
      EXPECT_NEAR(on[k][1].get<double>(), got.channels[i].on[k].end, tol);
    }
  }
}

TEST(SevenAgent, LinearSolveGolden) {
  const auto p = io::load_problem(kRoot + "/data/seven_agent.json");
  const auto sol = solve(p);
  const Eigen::VectorXd xT = simulate(p, sol.schedule, 1 << 16).terminal();
  std::vector<double> x(xT.data(), xT.data() + xT.size());
  const io::Json fresh = {{"beta_star", sol.beta_star},
                          {"spend", sol.spend},
                          {"objective_gain", sol.objective_gain},
                          {"schedule", io::schedule_json(sol.schedule)},
                          {"terminal_state", x}};
  const auto want = golden("seven_agent_linear.json", fresh);
  EXPECT_NEAR(want["beta_star"].get<double>(), sol.beta_star, 1e-10);
  EXPECT_NEAR(want["objective_gain"].get<double>(), sol.objective_gain, 1e-9);
  expect_schedule_near(want["schedule"], sol.schedule, 1e-8);
  for (int j = 0; j < 7; ++j) EXPECT_NEAR(want["terminal_state"][j].get<double>(), xT[j], 1e-10);

  // Coarser integration converges to the fine-step reference.
  const Eigen::VectorXd coarse = simulate(p, sol.schedule, 4096).terminal();
  EXPECT_LE((coarse - xT).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SevenAgent, ChannelRankingFlips) {
  const auto p = io::load_problem(kRoot + "/data/seven_agent.json");
  const auto sol = solve(p);
  const auto& g1 = sol.signals[0];
  const auto& g2 = sol.signals[1];
  EXPECT_NEAR(g1(10.0), 0.17, 1e-12);
  EXPECT_NEAR(g2(10.0), 0.99, 1e-12);
  EXPECT_NEAR(g1(0.0) / g2(0.0), 2.0, 0.2);
  EXPECT_GT(g1(0.0), g2(0.0));
  int crossings = 0;
  for (int k = 0; k < 10000; ++k) {
    const double a = g1(k * 1e-3) - g2(k * 1e-3), b = g1((k + 1) * 1e-3) - g2((k + 1) * 1e-3);
    if ((a > 0) != (b > 0)) ++crossings;
  }
  EXPECT_EQ(crossings, 1);
}

TEST(SevenAgent, SigmoidGolden) {
  const auto p = io::load_problem(kRoot + "/data/seven_agent_sigmoid.json");
  const auto r = solve_sigmoid(p);
  io::Json fresh = io::sigmoid_log_json(r);
  fresh["schedule"] = io::schedule_json(r.solution.schedule);
  const auto want = golden("seven_agent_sigmoid.json", fresh);
  EXPECT_EQ(want["best_iteration"].get<int>(), r.best_iteration);
  ASSERT_EQ(want["iterations"].size(), r.log.size());
  for (std::size_t k = 0; k < r.log.size(); ++k) {
    std::vector<int> late;
    for (int j : r.log[k].late_deciders) late.push_back(j + 1);
    EXPECT_EQ(want["iterations"][k]["late_deciders"].get<std::vector<int>>(), late);
    EXPECT_NEAR(want["iterations"][k]["objective"].get<double>(), r.log[k].objective, 1e-9);
  }
  expect_schedule_near(want["schedule"], r.solution.schedule, 1e-8);
}

}  // namespace
}  // namespace wavefill
