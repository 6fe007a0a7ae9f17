// Copyright 2026 The NLK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "nlk/solver.hpp"
#include "nlk/wallet_auction.hpp"

namespace nlk::wallet {
namespace {

TEST(BnlkBidTest, Examples) {
  const auto b0 = bnlk_bid(BeliefParam(0.0));
  EXPECT_DOUBLE_EQ(b0.slope, 2.0);
  EXPECT_DOUBLE_EQ(b0.intercept, 0.0);
  // d = 4, q = 2/3, b(1) = 3.
  const auto b75 = bnlk_bid(BeliefParam(0.75));
  EXPECT_NEAR(bnlk_spread(BeliefParam(0.75)), 4.0, 1e-14);
  EXPECT_NEAR(b75.slope, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(b75.intercept, 5.0 / 3.0, 1e-14);
  const auto b1 = bnlk_bid(BeliefParam(1.0));
  EXPECT_NEAR(b1.slope, 1.0, 1e-14);
  EXPECT_NEAR(b1.intercept, 2.5, 1e-14);
  const auto b05 = bnlk_bid(BeliefParam(0.05));
  EXPECT_NEAR(b05.slope, 1.951, 5e-4);
  EXPECT_NEAR(b05.intercept, 0.122, 5e-4);
}

TEST(BnlkBidTest, TinyLambdaUsesLimit) {
  EXPECT_DOUBLE_EQ(bnlk_spread(BeliefParam(1e-12)), 6.0);
  EXPECT_NEAR(bnlk_spread(BeliefParam(1e-6)), 6.0, 1e-4);
}

TEST(BnlkBidTest, QuadraticAndIdentities) {
  double prev_slope = 2.0 + 1e-12;
  for (int i = 1; i <= 1000; ++i) {
    const double l = i / 1000.0;
    const BeliefParam lam(l);
    const double d = bnlk_spread(lam);
    EXPECT_LE(std::abs(l * d * d + 3.0 * (2.0 - 3.0 * l) * d - 36.0 * (1.0 - l)), 1e-10) << l;
    const double q = bnlk_q(lam);
    EXPECT_NEAR(q, (l / 6.0) / (l / 6.0 + (1.0 - l) / d), 1e-10) << l;
    const auto b = bnlk_bid(lam);
    EXPECT_NEAR(b(1.0), 1.5 * q + 2.0, 1e-12);
    EXPECT_NEAR(b(4.0), 8.0 - 1.5 * q, 1e-12);
    EXPECT_GE(b(1.0), 2.0 - 1e-12);
    EXPECT_LE(b(4.0), 8.0 + 1e-12);
    EXPECT_LT(b.slope, prev_slope) << l;
    prev_slope = b.slope;
  }
  EXPECT_NEAR(prev_slope, 1.0, 1e-14);
}

TEST(LevelKBidTest, Rules) {
  EXPECT_DOUBLE_EQ(levelk_bid(1)(4.0), 6.5);
  EXPECT_DOUBLE_EQ(levelk_bid(2)(2.0), 3.5);
  EXPECT_DOUBLE_EQ(levelk_bid(2)(2.5), 3.5);
  EXPECT_DOUBLE_EQ(levelk_bid(2)(3.0), 6.5);
  const auto l3 = levelk_bid(3);
  EXPECT_FALSE(l3.point_valued());
  EXPECT_THROW(l3(2.0), Error);
  EXPECT_DOUBLE_EQ(l3.interval(2.0).hi, 3.5);
  EXPECT_DOUBLE_EQ(l3.interval(3.0).lo, 6.5);
  EXPECT_TRUE(std::isinf(l3.interval(3.0).hi));
  try {
    levelk_bid(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  EXPECT_THROW(levelk_bid(1)(0.5), Error);
}

TEST(MseBidsTest, Values) {
  std::vector<AuctionRecord> on_line;
  for (double x : {1.0, 2.0, 3.5, 4.0}) on_line.push_back({"s", 1, x, 2.0 * x, false});
  EXPECT_DOUBLE_EQ(mse_bids(on_line, bnlk_bid_function(BeliefParam(0.0))), 0.0);
  const std::vector<AuctionRecord> one{{"s", 1, 3.0, 6.5, false}};
  EXPECT_DOUBLE_EQ(mse_bids(one, levelk_bid(1)), 1.0);
  try {
    mse_bids(one, levelk_bid(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  EXPECT_THROW(mse_bids({}, levelk_bid(1)), Error);
  const std::vector<AuctionRecord> bad{{"s", 1, 5.0, 6.5, false}};
  EXPECT_THROW(mse_bids(bad, levelk_bid(1)), Error);
}

// Signal spacing on a 31-point grid over [1,4].
constexpr double kSpacing = 0.1;

double max_bid_error(const DiscreteBnlkResult& r, const DiscreteBayesianGame& g,
                     const LinearBid& line) {
  const auto mean = r.mean_action(g.actions);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.types.size(); ++i)
    worst = std::max(worst, std::abs(mean[i] - line.intercept - line.slope * g.types[i]));
  return worst;
}

TEST(DiscreteSolverTest, ConvergesToClosedForm) {
  const auto g = wallet_discrete_game(31, 301);
  const auto naive = uniform_naive(31, 301);
  for (double l : {0.0, 0.5, 1.0}) {
    const auto r = solve_bnlk_discrete(g, BeliefParam(l), naive);
    EXPECT_LE(r.max_regret, 1e-3);
    EXPECT_LE(max_bid_error(r, g, bnlk_bid(BeliefParam(l))), kSpacing) << "lambda " << l;
  }
}

TEST(DiscreteSolverTest, LevelOneNeedsNoIteration) {
  const auto g = wallet_discrete_game(31, 301);
  const auto r = solve_bnlk_discrete(g, BeliefParam(1.0), uniform_naive(31, 301));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_DOUBLE_EQ(r.max_regret, 0.0);
}

TEST(DiscreteSolverTest, FastOracleMatchesDirectSum) {
  const std::size_t nt = 7;
  const std::size_t na = 13;
  const auto fast = wallet_discrete_game(nt, na);
  const Eigen::MatrixXd prior =
      Eigen::MatrixXd::Constant(nt, nt, 1.0 / static_cast<double>(nt * nt));
  const auto xs = fast.types;
  const auto bs = fast.actions;
  const auto slow = make_bayesian_game(
      xs, bs, prior, [&](std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
        return wallet_payoff(xs[i], xs[j], bs[a], bs[b]);
      });
  Eigen::MatrixXd opp = Eigen::MatrixXd::Random(nt, na).cwiseAbs();
  for (Eigen::Index i = 0; i < opp.rows(); ++i) opp.row(i) /= opp.row(i).sum();
  EXPECT_LE((fast.values(opp) - slow.values(opp)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DiscreteSolverTest, OneTypeMatchesNormalForm) {
  // With a single type the Bayesian game is the chicken game.
  const auto chicken = chicken_game();
  const Eigen::MatrixXd prior = Eigen::MatrixXd::Ones(1, 1);
  const auto g = make_bayesian_game(
      {0.0}, {0.0, 1.0}, prior, [&](std::size_t, std::size_t, std::size_t a, std::size_t b) {
        return chicken.payoffs(0)(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      });
  const BeliefParam lambda(0.3);
  DiscreteBnlkOptions opt;
  opt.tolerance = 1e-4;
  opt.max_iterations = 2000000;
  const auto r = solve_bnlk_discrete(g, lambda, uniform_naive(1, 2), opt);
  const auto eqs = solve_nlk(chicken, lambda);
  const auto& eq = eqs[select_equilibrium(eqs)];
  EXPECT_NEAR(r.strategy(0, 0), eq.profile[0][0], 0.01);
}

TEST(DiscreteSolverTest, InputErrors) {
  const auto g = wallet_discrete_game(5, 5);
  EXPECT_THROW(solve_bnlk_discrete(g, BeliefParam(0.5), uniform_naive(4, 5)), Error);
  DiscreteBnlkOptions opt;
  opt.max_iterations = 1;
  opt.tolerance = 1e-12;
  EXPECT_THROW(solve_bnlk_discrete(g, BeliefParam(0.0), uniform_naive(5, 5), opt),
               NonConvergenceError);
  EXPECT_THROW(make_bayesian_game({1.0}, {1.0}, Eigen::MatrixXd::Constant(1, 1, 0.5),
                                  [](std::size_t, std::size_t, std::size_t, std::size_t) {
                                    return 0.0;
                                  }),
               Error);
}

}  // namespace
}  // namespace nlk::wallet
