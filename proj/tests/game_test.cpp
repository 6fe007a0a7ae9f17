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
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nlk/game.hpp"
#include "nlk/solver.hpp"

namespace nlk {
namespace {

constexpr std::size_t kDove = 0;
constexpr std::size_t kHawk = 1;

TEST(MixedStrategyTest, RejectsBadVectors) {
  EXPECT_THROW(MixedStrategy({0.5, 0.6}), Error);
  EXPECT_THROW(MixedStrategy({-0.1, 1.1}), Error);
  EXPECT_THROW(MixedStrategy(std::vector<double>{}), Error);
  EXPECT_NO_THROW(MixedStrategy({0.25, 0.75}));
}

TEST(MixedStrategyTest, FactoriesAndSupport) {
  const auto u = MixedStrategy::uniform(4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(u[i], 0.25);
  const auto p = MixedStrategy::pure(3, 2);
  EXPECT_EQ(p.support(), std::vector<std::size_t>{2});
  EXPECT_THROW(MixedStrategy::pure(3, 3), Error);
  const auto b = p.blend(MixedStrategy::uniform(3), 0.5);
  EXPECT_NEAR(b[2], 0.5 + 0.5 / 3.0, 1e-15);
}

TEST(BeliefParamTest, Range) {
  EXPECT_THROW(BeliefParam(-0.01), Error);
  EXPECT_THROW(BeliefParam(1.01), Error);
  EXPECT_THROW(BeliefParam(std::nan("")), Error);
  EXPECT_DOUBLE_EQ(BeliefParam(0.3).value(), 0.3);
}

TEST(GameTest, ChickenCells) {
  const auto g = chicken_game();
  EXPECT_DOUBLE_EQ(g.payoff(0, kDove, kHawk), 20.0);
  EXPECT_DOUBLE_EQ(g.payoff(0, kHawk, kDove), 70.0);
  // A plays Dove, B plays Hawk: B collects 70.
  EXPECT_DOUBLE_EQ(g.payoff(1, kHawk, kDove), 70.0);
  EXPECT_TRUE(g.is_symmetric());
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t t = 0; t < 2; ++t) EXPECT_EQ(g.payoff(0, s, t), g.payoff(1, s, t));
}

TEST(GameTest, ConstructionValidates) {
  Eigen::MatrixXd a(2, 3);
  a.setZero();
  Eigen::MatrixXd b(2, 2);
  b.setZero();
  EXPECT_THROW(NormalFormGame({std::vector<std::string>{"x", "y"}, {"p", "q", "r"}}, {a, b}),
               Error);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 2);
  c(0, 0) = std::numeric_limits<double>::infinity();
  try {
    NormalFormGame({std::vector<std::string>{"x", "y"}, {"p", "q", "r"}}, {a, c});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(ExpectedPayoffTest, ChickenValues) {
  const auto g = chicken_game();
  EXPECT_DOUBLE_EQ(expected_payoff(g, 0, MixedStrategy::pure(2, kHawk), MixedStrategy::pure(2, kDove)), 70.0);
  // (30 + 20 + 70 + 0) / 4
  EXPECT_DOUBLE_EQ(expected_payoff(g, 0, MixedStrategy::uniform(2), MixedStrategy::uniform(2)), 30.0);
  EXPECT_DOUBLE_EQ(expected_payoff(g, 1, MixedStrategy::pure(2, kDove), MixedStrategy::pure(2, kDove)), 30.0);
}

TEST(ExpectedPayoffTest, DimensionErrorNamesPlayer) {
  const auto g = chicken_game();
  try {
    expected_payoff(g, 1, MixedStrategy::uniform(3), MixedStrategy::uniform(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_NE(std::string(e.what()).find("player 1"), std::string::npos) << e.what();
  }
}

TEST(ExpectedPayoffTest, Bilinear) {
  const auto g = chicken_game();
  const auto x = MixedStrategy({0.2, 0.8});
  const auto y = MixedStrategy({0.7, 0.3});
  const auto z = MixedStrategy({0.1, 0.9});
  const double w = 0.35;
  EXPECT_NEAR(expected_payoff(g, 0, x.blend(z, w), y),
              w * expected_payoff(g, 0, x, y) + (1 - w) * expected_payoff(g, 0, z, y), 1e-12);
}

TEST(BlendedPayoffTest, HandValue) {
  const auto g = chicken_game();
  const auto naive = NaiveProfile::uniform(g);
  const auto hawk = MixedStrategy::pure(2, kHawk);
  // 0.5 * 35 + 0.5 * 0
  EXPECT_DOUBLE_EQ(blended_payoff(g, 0, hawk, naive, hawk, BeliefParam(0.5)), 17.5);
}

TEST(BlendedPayoffTest, EndpointsAndAffine) {
  const auto g = chicken_game();
  const auto naive = NaiveProfile::uniform(g);
  const auto own = MixedStrategy({0.4, 0.6});
  const auto eq = MixedStrategy({0.9, 0.1});
  const double at0 = blended_payoff(g, 0, own, naive, eq, BeliefParam(0.0));
  const double at1 = blended_payoff(g, 0, own, naive, eq, BeliefParam(1.0));
  EXPECT_EQ(at0, expected_payoff(g, 0, own, eq));
  EXPECT_EQ(at1, expected_payoff(g, 0, own, naive[1]));
  for (double l : {0.1, 0.37, 0.8})
    EXPECT_NEAR(blended_payoff(g, 0, own, naive, eq, BeliefParam(l)), l * at1 + (1 - l) * at0,
                1e-12);
}

TEST(BestResponseTest, ChickenCases) {
  const auto g = chicken_game();
  const auto naive = NaiveProfile::uniform(g);
  // Hawk earns 35 against uniform, Dove 25.
  EXPECT_EQ(pure_best_responses(g, 0, naive, MixedStrategy::pure(2, kDove), BeliefParam(1.0)),
            std::vector<std::size_t>{kHawk});
  EXPECT_EQ(pure_best_responses(g, 0, naive, MixedStrategy::pure(2, kDove), BeliefParam(0.0)),
            std::vector<std::size_t>{kHawk});
}

TEST(BestResponseTest, DegenerateGameAllTied) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Constant(3, 3, 4.0);
  const auto g = NormalFormGame::symmetric({"a", "b", "c"}, u);
  EXPECT_EQ(pure_best_responses(g, 0, NaiveProfile::uniform(g), MixedStrategy::uniform(3),
                                BeliefParam(0.4)),
            (std::vector<std::size_t>{0, 1, 2}));
}

TEST(BestResponseTest, InvariantUnderShift) {
  Eigen::MatrixXd u(3, 3);
  u << 1, 5, 2, 4, 0, 3, 2, 2, 2;
  const auto g = NormalFormGame::symmetric({"a", "b", "c"}, u);
  Eigen::MatrixXd shifted = u.array() + 17.0;
  const auto h = NormalFormGame::symmetric({"a", "b", "c"}, shifted);
  const auto eq = MixedStrategy({0.3, 0.3, 0.4});
  for (double l : {0.0, 0.5, 1.0})
    EXPECT_EQ(pure_best_responses(g, 0, NaiveProfile::uniform(g), eq, BeliefParam(l)),
              pure_best_responses(h, 0, NaiveProfile::uniform(h), eq, BeliefParam(l)));
}

}  // namespace
}  // namespace nlk
