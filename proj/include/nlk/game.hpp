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

// Two-player finite games, mixed strategies, and the lambda-blended payoff
// that every solver in this library is built on.

#ifndef NLK_GAME_HPP
#define NLK_GAME_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nlk/error.hpp"

namespace nlk {

inline constexpr double kSimplexTolerance = 1e-12;
inline constexpr double kTieTolerance = 1e-9;

// A probability vector over a player's pure strategies.
class MixedStrategy {
 public:
  MixedStrategy() = default;

  explicit MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
    require(!probs_.empty(), ErrorCode::kInvalidArgument,
            "mixed strategy must have at least one entry");
    double sum = 0.0;
    for (double p : probs_) {
      require(std::isfinite(p), ErrorCode::kNonFinite,
              "mixed strategy entry is not finite");
      require(p >= -kSimplexTolerance && p <= 1.0 + kSimplexTolerance,
              ErrorCode::kOutOfRange, "mixed strategy entry outside [0,1]");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= kSimplexTolerance * probs_.size() + 1e-15,
            ErrorCode::kOutOfRange,
            "mixed strategy entries sum to " + std::to_string(sum));
    for (double& p : probs_) p = std::clamp(p, 0.0, 1.0);
  }

  static MixedStrategy uniform(std::size_t n) {
    require(n > 0, ErrorCode::kInvalidArgument, "uniform over empty set");
    return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  static MixedStrategy pure(std::size_t n, std::size_t index) {
    require(index < n, ErrorCode::kOutOfRange, "pure strategy index out of range");
    std::vector<double> p(n, 0.0);
    p[index] = 1.0;
    return MixedStrategy(std::move(p));
  }

  // Clips tiny negative round-off and rescales to unit mass. For numerically
  // computed vectors only; large negatives are still rejected.
  static MixedStrategy normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double& w : weights) {
      require(std::isfinite(w) && w > -1e-9, ErrorCode::kOutOfRange,
              "cannot normalize a vector with negative mass");
      w = std::max(w, 0.0);
      sum += w;
    }
    require(sum > 0.0, ErrorCode::kOutOfRange, "cannot normalize a zero vector");
    for (double& w : weights) w /= sum;
    return MixedStrategy(std::move(weights));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& vector() const noexcept { return probs_; }

  std::vector<std::size_t> support(double tol = kTieTolerance) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < probs_.size(); ++i)
      if (probs_[i] > tol) out.push_back(i);
    return out;
  }

  // Mixture w*this + (1-w)*other.
  MixedStrategy blend(const MixedStrategy& other, double w) const {
    require(other.size() == size(), ErrorCode::kDimensionMismatch,
            "cannot blend strategies of different sizes");
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i)
      out[i] = w * probs_[i] + (1.0 - w) * other.probs_[i];
    return normalized(std::move(out));
  }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

// Subjective probability that the opponent is naive.
class BeliefParam {
 public:
  explicit BeliefParam(double lambda) : lambda_(lambda) {
    require(std::isfinite(lambda) && lambda >= 0.0 && lambda <= 1.0,
            ErrorCode::kOutOfRange,
            "lambda must lie in [0,1], got " + std::to_string(lambda));
  }
  double value() const noexcept { return lambda_; }
  operator double() const noexcept { return lambda_; }

 private:
  double lambda_;
};

// Finite two-player game. payoff(i)(s_i, s_j) is player i's utility when i
// plays s_i and the opponent plays s_j; both matrices are indexed own-first.
class NormalFormGame {
 public:
  static constexpr std::size_t kPlayers = 2;

  NormalFormGame(std::array<std::vector<std::string>, kPlayers> labels,
                 std::array<Eigen::MatrixXd, kPlayers> payoffs)
      : labels_(std::move(labels)), payoffs_(std::move(payoffs)) {
    for (std::size_t i = 0; i < kPlayers; ++i) {
      const std::size_t own = labels_[i].size();
      const std::size_t opp = labels_[1 - i].size();
      require(own > 0, ErrorCode::kDimensionMismatch,
              "player " + std::to_string(i) + " has no strategies");
      require(static_cast<std::size_t>(payoffs_[i].rows()) == own &&
                  static_cast<std::size_t>(payoffs_[i].cols()) == opp,
              ErrorCode::kDimensionMismatch,
              "payoff matrix of player " + std::to_string(i) + " is " +
                  std::to_string(payoffs_[i].rows()) + "x" +
                  std::to_string(payoffs_[i].cols()) + ", expected " +
                  std::to_string(own) + "x" + std::to_string(opp));
      require(payoffs_[i].allFinite(), ErrorCode::kNonFinite,
              "payoff matrix of player " + std::to_string(i) +
                  " has a non-finite entry");
    }
  }

  // Symmetric game from a single own-first payoff matrix.
  static NormalFormGame symmetric(std::vector<std::string> labels,
                                  const Eigen::MatrixXd& payoff) {
    return NormalFormGame({labels, labels}, {payoff, payoff});
  }

  std::size_t num_strategies(std::size_t player) const {
    check_player(player);
    return labels_[player].size();
  }
  const std::vector<std::string>& labels(std::size_t player) const {
    check_player(player);
    return labels_[player];
  }
  const Eigen::MatrixXd& payoffs(std::size_t player) const {
    check_player(player);
    return payoffs_[player];
  }
  double payoff(std::size_t player, std::size_t own, std::size_t opp) const {
    return payoffs(player)(static_cast<Eigen::Index>(own),
                           static_cast<Eigen::Index>(opp));
  }

  bool is_symmetric(double tol = 0.0) const {
    if (labels_[0].size() != labels_[1].size()) return false;
    return (payoffs_[0] - payoffs_[1]).cwiseAbs().maxCoeff() <= tol;
  }

  static void check_player(std::size_t player) {
    require(player < kPlayers, ErrorCode::kOutOfRange,
            "player index " + std::to_string(player) + " out of range");
  }

 private:
  std::array<std::vector<std::string>, kPlayers> labels_;
  std::array<Eigen::MatrixXd, kPlayers> payoffs_;
};

// Exogenous strategy of the naive (level-0) type, one per player.
class NaiveProfile {
 public:
  NaiveProfile(MixedStrategy first, MixedStrategy second)
      : strategies_{std::move(first), std::move(second)} {}

  static NaiveProfile uniform(const NormalFormGame& game) {
    return {MixedStrategy::uniform(game.num_strategies(0)),
            MixedStrategy::uniform(game.num_strategies(1))};
  }

  const MixedStrategy& operator[](std::size_t player) const {
    NormalFormGame::check_player(player);
    return strategies_[player];
  }

  void check_against(const NormalFormGame& game) const {
    for (std::size_t i = 0; i < 2; ++i)
      require(strategies_[i].size() == game.num_strategies(i),
              ErrorCode::kDimensionMismatch,
              "naive strategy of player " + std::to_string(i) +
                  " does not match the game");
  }

 private:
  std::array<MixedStrategy, 2> strategies_;
};

namespace detail {

inline void check_dims(const NormalFormGame& game, std::size_t player,
                       const MixedStrategy& own, const MixedStrategy& opp) {
  require(own.size() == game.num_strategies(player),
          ErrorCode::kDimensionMismatch,
          "strategy of player " + std::to_string(player) + " has " +
              std::to_string(own.size()) + " entries, game has " +
              std::to_string(game.num_strategies(player)));
  require(opp.size() == game.num_strategies(1 - player),
          ErrorCode::kDimensionMismatch,
          "strategy of player " + std::to_string(1 - player) + " has " +
              std::to_string(opp.size()) + " entries, game has " +
              std::to_string(game.num_strategies(1 - player)));
}

inline Eigen::Map<const Eigen::VectorXd> as_eigen(const MixedStrategy& s) {
  return {s.probs().data(), static_cast<Eigen::Index>(s.size())};
}

}  // namespace detail

// Payoff of each of `player`'s pure strategies against opponent mix `opp`.
inline std::vector<double> pure_payoffs(const NormalFormGame& game,
                                        std::size_t player,
                                        const MixedStrategy& opp) {
  require(opp.size() == game.num_strategies(1 - player),
          ErrorCode::kDimensionMismatch,
          "strategy of player " + std::to_string(1 - player) +
              " does not match the game");
  Eigen::VectorXd v = game.payoffs(player) * detail::as_eigen(opp);
  return {v.data(), v.data() + v.size()};
}

inline double expected_payoff(const NormalFormGame& game, std::size_t player,
                              const MixedStrategy& own,
                              const MixedStrategy& opp) {
  detail::check_dims(game, player, own, opp);
  return detail::as_eigen(own).dot(game.payoffs(player) *
                                   detail::as_eigen(opp));
}

// Per-pure-strategy payoff under the lambda blend of naive and equilibrium
// opponents.
inline std::vector<double> blended_pure_payoffs(const NormalFormGame& game,
                                                std::size_t player,
                                                const NaiveProfile& naive,
                                                const MixedStrategy& equilibrium,
                                                BeliefParam lambda) {
  const std::size_t opp = 1 - player;
  std::vector<double> vs_naive = pure_payoffs(game, player, naive[opp]);
  std::vector<double> vs_eq = pure_payoffs(game, player, equilibrium);
  for (std::size_t s = 0; s < vs_naive.size(); ++s)
    vs_naive[s] = lambda * vs_naive[s] + (1.0 - lambda) * vs_eq[s];
  return vs_naive;
}

// lambda * u(own, naive_opp) + (1 - lambda) * u(own, equilibrium_opp).
inline double blended_payoff(const NormalFormGame& game, std::size_t player,
                             const MixedStrategy& own, const NaiveProfile& naive,
                             const MixedStrategy& equilibrium,
                             BeliefParam lambda) {
  const std::size_t opp = 1 - player;
  return lambda * expected_payoff(game, player, own, naive[opp]) +
         (1.0 - lambda) * expected_payoff(game, player, own, equilibrium);
}

// Indices within kTieTolerance of the best blended payoff, ascending.
inline std::vector<std::size_t> pure_best_responses(
    const NormalFormGame& game, std::size_t player, const NaiveProfile& naive,
    const MixedStrategy& equilibrium, BeliefParam lambda) {
  const auto values =
      blended_pure_payoffs(game, player, naive, equilibrium, lambda);
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < values.size(); ++s)
    if (values[s] >= best - kTieTolerance) out.push_back(s);
  return out;
}

}  // namespace nlk

#endif  // NLK_GAME_HPP
