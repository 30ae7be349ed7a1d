#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wavefill/costate.hpp"
#include "wavefill/errors.hpp"

namespace wavefill {
namespace {

const Eigen::VectorXd kSevenAgentP =
    (Eigen::VectorXd(7) << 0.03, 0.02, 0.10, 1.00, 0.06, 0.07, 0.01).finished();

ChannelProfile k2_profile() {
  const auto sd = spectral_decompose(build_laplacian({2, {{0, 1, 1.0}}}));
  return channel_profile(sd, {Eigen::Vector2d(0.0, 1.0)}, Eigen::Vector2d(1.0, 0.0), 1.0);
}

TEST(TerminalCostate, LinearIsP) {
  Objective o;
  o.p = kSevenAgentP;
  EXPECT_EQ(terminal_costate(o).lam, kSevenAgentP);
}

TEST(TerminalCostate, SigmoidAtThresholdAndSaturation) {
  Objective o{ObjectiveKind::kSigmoid, Eigen::Vector3d(1.0, 2.0, 0.5),
              Eigen::Vector3d(4.0, 10.0, 0.1), Eigen::Vector3d(0.2, -0.3, 5.0)};
  const auto at = terminal_costate(o, o.theta).lam;
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(at[i], o.p[i] * o.alpha[i] / 4.0);
  const Eigen::VectorXd far = o.theta + (50.0 * o.alpha.cwiseInverse());
  for (int i = 0; i < 3; ++i) EXPECT_LT(terminal_costate(o, far).lam[i], 1e-20);
  const Eigen::VectorXd huge = Eigen::Vector3d::Constant(-1e300);
  const auto sat = terminal_costate(o, huge).lam;
  EXPECT_TRUE(sat.allFinite());
  EXPECT_LT(sat.maxCoeff(), 1e-20);
  EXPECT_THROW(terminal_costate(o), ContractError);
}

TEST(TerminalCostate, SigmoidMatchesFiniteDifference) {
  Objective o{ObjectiveKind::kSigmoid, Eigen::Vector2d(1.0, 0.7), Eigen::Vector2d(3.0, 8.0),
              Eigen::Vector2d(0.1, -0.2)};
  const Eigen::Vector2d x(0.4, -0.15);
  const auto lam = terminal_costate(o, x).lam;
  for (int i = 0; i < 2; ++i) {
    auto J = [&](double xi) {
      const double w = o.alpha[i] * (xi - o.theta[i]);
      return o.p[i] / (1.0 + std::exp(-w));
    };
    const double h = 1e-5;
    EXPECT_NEAR(lam[i], (J(x[i] + h) - J(x[i] - h)) / (2 * h), 1e-8);
  }
}

TEST(Profile, K2Coefficients) {
  const auto prof = k2_profile();
  ASSERT_EQ(prof.modes.size(), 2u);
  EXPECT_EQ(prof.modes[0].rate, 0.0);
  EXPECT_NEAR(prof.modes[0].coeff, 0.5, 1e-15);
  EXPECT_NEAR(prof.modes[1].rate, 2.0, 1e-14);
  EXPECT_NEAR(prof.modes[1].coeff, -0.5, 1e-15);
  EXPECT_NEAR(eval_h(prof, 0.0), 0.5 - 0.5 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(eval_h(prof, 0.0), 0.432332358, 1e-9);
  EXPECT_NEAR(eval_h(prof, 1.0), 0.0, 1e-15);
}

TEST(Profile, UniformCostateKeepsOnlyKernel) {
  Rng rng(2);
  const auto g = testing::random_connected_graph(9, 0.3, rng);
  const auto sd = spectral_decompose(build_laplacian(g));
  Eigen::VectorXd b(9);
  for (int j = 0; j < 9; ++j) b[j] = rng.normal();
  const auto prof = channel_profile(sd, {Eigen::VectorXd::Constant(9, 0.3)}, b, 2.0);
  ASSERT_EQ(prof.modes.size(), 1u);
  EXPECT_EQ(prof.modes[0].rate, 0.0);
  EXPECT_NEAR(prof.modes[0].coeff, 0.3 * b.sum(), 1e-12);
  for (double t : {0.0, 0.7, 2.0}) EXPECT_NEAR(eval_h(prof, t), 0.3 * b.sum(), 1e-12);
}

TEST(Profile, OrthogonalGroupIsAbsent) {
  // P3: eigenvectors (1,1,1), (1,0,-1), (1,-2,1). b = (1,-2,1) + 3(1,1,1) has
  // no component on xi = 1.
  const auto sd = spectral_decompose(build_laplacian(testing::path_graph(3)));
  const auto prof = channel_profile(sd, {Eigen::Vector3d(0.2, 0.5, 0.9)},
                                    Eigen::Vector3d(4.0, 1.0, 4.0), 1.0);
  for (const auto& m : prof.modes) EXPECT_GT(std::abs(m.rate - 1.0), 1e-6);
  EXPECT_EQ(prof.modes.size(), 2u);
}

TEST(Profile, KernelCoefficientClosedForm) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 10;
    const auto sd = spectral_decompose(build_laplacian(testing::random_connected_graph(n, 0.3, rng)));
    Eigen::VectorXd lam(n), b(n);
    for (int j = 0; j < n; ++j) {
      lam[j] = rng.uniform();
      b[j] = rng.normal();
    }
    const auto prof = channel_profile(sd, {lam}, b, 1.0);
    EXPECT_NEAR(prof.constant_coeff(), lam.sum() * b.sum() / n, 1e-10);
    for (std::size_t k = 1; k < prof.modes.size(); ++k)
      EXPECT_GT(prof.modes[k].rate, prof.modes[k - 1].rate);
    EXPECT_NEAR(eval_h(prof, 1.0), lam.dot(b), 1e-12);
  }
}

TEST(Profile, DegenerateSpectrumMatchesMatrixExponential) {
  // K5 has a four-fold eigenvalue; the profile must not depend on the basis.
  const auto g = testing::complete_graph(5);
  const auto L = build_laplacian(g);
  const auto sd = spectral_decompose(L);
  const Eigen::VectorXd lam = (Eigen::VectorXd(5) << 0.1, 0.9, 0.3, 0.0, 0.4).finished();
  const Eigen::VectorXd b = (Eigen::VectorXd(5) << 1.0, 0.0, -0.5, 2.0, 0.0).finished();
  const auto prof = channel_profile(sd, {lam}, b, 1.5);
  EXPECT_EQ(prof.modes.size(), 2u);
  for (double t = 0.0; t <= 1.5; t += 0.1)
    EXPECT_NEAR(eval_h(prof, t), testing::matrix_exp_costate(L.matrix, lam, b, t, 1.5), 1e-12);
}

TEST(Profile, SignMatchesMatrixExponential) {
  // e^{+xi (t - T)}: nonconstant modes decay as t moves below T.
  const auto prof = k2_profile();
  const auto L = build_laplacian({2, {{0, 1, 1.0}}});
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
    EXPECT_NEAR(eval_h(prof, t),
                testing::matrix_exp_costate(L.matrix, Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 0),
                                            t, 1.0),
                1e-14);
}

TEST(Profile, EarlyLimitIsTotalReach) {
  Rng rng(6);
  const int n = 8;
  const auto sd = spectral_decompose(build_laplacian(testing::random_connected_graph(n, 0.4, rng)));
  Eigen::VectorXd p(n), b(n);
  for (int j = 0; j < n; ++j) {
    p[j] = rng.uniform();
    b[j] = rng.uniform(-1, 1);
  }
  const double T = 200.0;
  const auto prof = channel_profile(sd, {p}, b, T);
  EXPECT_NEAR(eval_h(prof, 0.0), p.sum() * b.sum() / n, 1e-12);
}

TEST(Adjoint, K2MatchesClosedForm) {
  const auto L = build_laplacian({2, {{0, 1, 1.0}}});
  std::vector<double> grid;
  for (int k = 0; k <= 64; ++k) grid.push_back(k / 64.0);
  const auto lam = adjoint_check(L, {Eigen::Vector2d(0.0, 1.0)}, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double decay = std::exp(2.0 * (grid[k] - 1.0));
    EXPECT_NEAR(lam[k][0], 0.5 - 0.5 * decay, 1e-8);
    EXPECT_NEAR(lam[k][1], 0.5 + 0.5 * decay, 1e-8);
  }
}

TEST(Adjoint, UniformIsConstant) {
  Rng rng(9);
  const auto L = build_laplacian(testing::random_connected_graph(6, 0.5, rng));
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  for (const auto& v : adjoint_check(L, {Eigen::VectorXd::Constant(6, 0.7)}, grid, 8))
    EXPECT_LE((v.array() - 0.7).abs().maxCoeff(), 1e-14);
}

TEST(Adjoint, AgreesWithSpectralRoute) {
  Rng rng(10);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(19));
    const auto L = build_laplacian(testing::random_connected_graph(n, 0.25, rng));
    const auto sd = spectral_decompose(L);
    Eigen::VectorXd lam(n), b(n);
    for (int j = 0; j < n; ++j) {
      lam[j] = rng.uniform();
      b[j] = rng.uniform(-1, 1);
    }
    const double T = rng.uniform(0.5, 4.0);
    const auto prof = channel_profile(sd, {lam}, b, T);
    std::vector<double> grid;
    for (int k = 0; k <= 1024; ++k) grid.push_back(T * k / 1024);
    const auto back = adjoint_check(L, {lam}, grid, 4);
    for (std::size_t k = 0; k < grid.size(); ++k)
      ASSERT_NEAR(back[k].dot(b), eval_h(prof, grid[k]), 1e-8) << "trial " << trial;
  }
}

TEST(Profile, PositivityPropagates) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 12;
    const auto sd = spectral_decompose(build_laplacian(testing::random_connected_graph(n, 0.3, rng)));
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(n), b = Eigen::VectorXd::Zero(n);
    lam[rng.below(n)] = 1.0;
    for (int j = 0; j < n; ++j) b[j] = rng.uniform() < 0.5 ? rng.uniform() : 0.0;
    b[rng.below(n)] = 1.0;
    const double T = 3.0;
    const auto prof = channel_profile(sd, {lam}, b, T);
    for (int k = 0; k <= 300; ++k) EXPECT_GE(eval_h(prof, T * k / 300), -1e-10);
  }
}

TEST(Profile, DerivativeMatchesDifference) {
  const auto prof = k2_profile();
  for (double t : {0.1, 0.5, 0.9}) {
    const double h = 1e-6;
    EXPECT_NEAR(eval_h_derivative(prof, t), (eval_h(prof, t + h) - eval_h(prof, t - h)) / (2 * h),
                1e-8);
  }
}

}  // namespace
}  // namespace wavefill
