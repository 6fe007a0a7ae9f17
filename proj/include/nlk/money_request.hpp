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

// Money request (11-20) game: each player asks for an integer amount in
// [11, 20] and earns a bonus of 20 when asking for exactly one less than
// the opponent.

#ifndef NLK_MONEY_REQUEST_HPP
#define NLK_MONEY_REQUEST_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nlk/error.hpp"
#include "nlk/game.hpp"

namespace nlk::money_request {

inline constexpr int kMinRequest = 11;
inline constexpr int kMaxRequest = 20;
inline constexpr std::size_t kNumActions = kMaxRequest - kMinRequest + 1;
inline constexpr double kBonus = 20.0;

inline std::size_t action_index(int amount) {
  require(amount >= kMinRequest && amount <= kMaxRequest,
          ErrorCode::kOutOfRange,
          "request " + std::to_string(amount) + " outside [11,20]");
  return static_cast<std::size_t>(amount - kMinRequest);
}

inline int action_amount(std::size_t index) {
  require(index < kNumActions, ErrorCode::kOutOfRange, "action index out of range");
  return kMinRequest + static_cast<int>(index);
}

inline double payoff(int own, int opp) {
  action_index(own);
  action_index(opp);
  return own + (own == opp - 1 ? kBonus : 0.0);
}

// Distribution over the ten requests 11..20.
class RequestDistribution {
 public:
  explicit RequestDistribution(MixedStrategy probs) : probs_(std::move(probs)) {
    require(probs_.size() == kNumActions, ErrorCode::kDimensionMismatch,
            "request distribution needs ten entries");
  }
  double at(int amount) const { return probs_[action_index(amount)]; }
  double percent(int amount) const { return 100.0 * at(amount); }
  const MixedStrategy& strategy() const noexcept { return probs_; }
  std::vector<double> percents() const {
    std::vector<double> out;
    for (double p : probs_.probs()) out.push_back(100.0 * p);
    return out;
  }

 private:
  MixedStrategy probs_;
};

struct PopulationBlend {
  double rho;  // objective share of naive players
  BeliefParam lambda;

  PopulationBlend(double rho_, BeliefParam lambda_) : rho(rho_), lambda(lambda_) {
    require(rho >= 0.0 && rho <= 1.0, ErrorCode::kOutOfRange,
            "rho must lie in [0,1]");
  }
};

inline NormalFormGame game_1120() {
  Eigen::MatrixXd u(kNumActions, kNumActions);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < kNumActions; ++i) {
    labels.push_back(std::to_string(action_amount(i)));
    for (std::size_t j = 0; j < kNumActions; ++j)
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          payoff(action_amount(i), action_amount(j));
  }
  return NormalFormGame::symmetric(std::move(labels), u);
}

// Closed-form symmetric lambda-NLK strategy, piecewise over five lambda
// intervals (each closed on the left, open on the right; the last one is
// [19/20, 1] and puts all mass on 19).
inline RequestDistribution nlk_1120(BeliefParam lambda) {
  const double l = lambda;
  std::vector<double> p(kNumActions, 0.0);
  auto set = [&](int amount, double value) { p[action_index(amount)] = value; };
  if (l >= 19.0 / 20.0) {
    set(19, 1.0);
    return RequestDistribution(MixedStrategy::normalized(std::move(p)));
  }
  const double denom = 20.0 * (1.0 - l);
  if (l < 0.5) {
    set(15, (5.0 - 10.0 * l) / denom);
    set(16, (5.0 - 2.0 * l) / denom);
    set(17, (4.0 - 2.0 * l) / denom);
    set(18, (3.0 - 2.0 * l) / denom);
    set(19, (2.0 - 2.0 * l) / denom);
    set(20, (1.0 - 2.0 * l) / denom);
  } else if (l < 14.0 / 20.0) {
    set(16, (14.0 - 20.0 * l) / denom);
    set(17, 3.0 / denom);
    set(18, 2.0 / denom);
    set(19, 1.0 / denom);
  } else if (l < 17.0 / 20.0) {
    set(17, (17.0 - 20.0 * l) / denom);
    set(18, 2.0 / denom);
    set(19, 1.0 / denom);
  } else {
    set(18, (19.0 - 20.0 * l) / denom);
    set(19, 1.0 / denom);
  }
  return RequestDistribution(MixedStrategy::normalized(std::move(p)));
}

// Pure request of a level-k player (k >= 1); cycles with period 10.
inline int levelk_1120(int k) {
  require(k >= 1, ErrorCode::kInvalidArgument,
          "level-k request needs k >= 1; level 0 is the naive distribution");
  const int r = k % 10;
  return r == 0 ? kMaxRequest : kMaxRequest - r;
}

inline RequestDistribution levelk_distribution(int k) {
  return RequestDistribution(
      MixedStrategy::pure(kNumActions, action_index(levelk_1120(k))));
}

// rho * uniform + (1 - rho) * nlk_1120(lambda).
inline RequestDistribution population_1120(const PopulationBlend& blend) {
  const auto uniform = MixedStrategy::uniform(kNumActions);
  return RequestDistribution(
      uniform.blend(nlk_1120(blend.lambda).strategy(), blend.rho));
}

// Expected payoff of each request against an opponent distribution.
inline std::vector<double> payoffs_against(const MixedStrategy& opp) {
  return pure_payoffs(game_1120(), 0, opp);
}

// Level-k (k >= 1) best responds to level k-1, with level 0 uniform.
inline std::vector<double> levelk_payoffs(int k) {
  require(k >= 1, ErrorCode::kInvalidArgument, "level-k payoffs need k >= 1");
  if (k == 1) return payoffs_against(MixedStrategy::uniform(kNumActions));
  return payoffs_against(levelk_distribution(k - 1).strategy());
}

// Blended payoff of an NLK type: naive with weight lambda, otherwise the
// lambda-NLK equilibrium.
inline std::vector<double> nlk_payoffs(BeliefParam lambda) {
  const auto game = game_1120();
  return blended_pure_payoffs(game, 0, NaiveProfile::uniform(game),
                              nlk_1120(lambda).strategy(), lambda);
}

}  // namespace nlk::money_request

#endif  // NLK_MONEY_REQUEST_HPP
