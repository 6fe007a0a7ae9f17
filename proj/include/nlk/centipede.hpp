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

// Doubling centipede game: PBNLK assessments, level-k thresholds, and the
// observation-weighted deviation between data and model stop rates.
//
// Nodes are numbered 1..S. Player A moves at odd nodes, player B at even
// ones. Stop probabilities are conditional on reaching the node.

#ifndef NLK_CENTIPEDE_HPP
#define NLK_CENTIPEDE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nlk/error.hpp"
#include "nlk/game.hpp"

namespace nlk::centipede {

// A naive player takes or passes with equal probability.
inline constexpr double kNaiveStop = 0.5;
inline constexpr double kDefaultTolerance = 1e-9;

enum class Action { kTake, kPass };

struct NodePayoffs {
  double a;
  double b;
};

class CentipedeGame {
 public:
  static constexpr double kInitialPot = 5.0;
  static constexpr double kTakeShare = 0.8;
  static constexpr double kGrowth = 2.0;

  explicit CentipedeGame(int stages) : stages_(stages) {
    require(stages >= 2 && stages % 2 == 0, ErrorCode::kInvalidArgument,
            "centipede needs an even number of stages >= 2, got " +
                std::to_string(stages));
  }
  static CentipedeGame with_rounds(int rounds) {
    require(rounds >= 1, ErrorCode::kInvalidArgument, "rounds must be >= 1");
    return CentipedeGame(2 * rounds);
  }

  int stages() const noexcept { return stages_; }
  int rounds() const noexcept { return stages_ / 2; }

  void check_node(int t) const {
    require(t >= 1 && t <= stages_, ErrorCode::kOutOfRange,
            "node " + std::to_string(t) + " outside [1," +
                std::to_string(stages_) + "]");
  }
  double pot(int t) const {
    check_node(t);
    return kInitialPot * std::pow(kGrowth, t - 1);
  }
  // 0 for player A, 1 for player B.
  static int mover(int t) noexcept { return t % 2 == 1 ? 0 : 1; }

 private:
  int stages_;
};

inline NodePayoffs node_payoffs(const CentipedeGame& game, int t, Action action) {
  game.check_node(t);
  const double x = game.pot(t);
  if (action == Action::kTake) {
    const double mine = CentipedeGame::kTakeShare * x;
    const double theirs = (1.0 - CentipedeGame::kTakeShare) * x;
    return CentipedeGame::mover(t) == 0 ? NodePayoffs{mine, theirs}
                                        : NodePayoffs{theirs, mine};
  }
  require(t == game.stages(), ErrorCode::kInvalidArgument,
          "pass at node " + std::to_string(t) + " is not terminal");
  const double final_pot = CentipedeGame::kGrowth * x;
  return {CentipedeGame::kTakeShare * final_pot,
          (1.0 - CentipedeGame::kTakeShare) * final_pot};
}

// Posterior that the opponent is naive after it passed n - 1 times, when an
// NLK opponent would have passed for sure.
inline double posterior_naive(BeliefParam lambda, int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "pass-round index must be >= 1");
  const double l = lambda;
  const double naive = l * std::pow(1.0 - kNaiveStop, n - 1);
  const double denom = naive + (1.0 - l);
  return denom > 0.0 ? naive / denom : 0.0;
}

class StopProfile {
 public:
  StopProfile() = default;
  explicit StopProfile(std::vector<double> stop) : stop_(std::move(stop)) {
    for (std::size_t i = 0; i < stop_.size(); ++i) {
      require(std::isfinite(stop_[i]), ErrorCode::kNonFinite,
              "stop probability at node " + std::to_string(i + 1) + " not finite");
      require(stop_[i] >= -1e-12 && stop_[i] <= 1.0 + 1e-12, ErrorCode::kOutOfRange,
              "stop probability at node " + std::to_string(i + 1) +
                  " outside [0,1]");
      stop_[i] = std::clamp(stop_[i], 0.0, 1.0);
    }
  }

  std::size_t size() const noexcept { return stop_.size(); }
  // 1-based node access.
  double at(int t) const {
    require(t >= 1 && static_cast<std::size_t>(t) <= stop_.size(),
            ErrorCode::kOutOfRange, "node index out of range");
    return stop_[static_cast<std::size_t>(t - 1)];
  }
  const std::vector<double>& values() const noexcept { return stop_; }

  // First node with a positive stop probability for the given player, or 0.
  int first_stop(int player, double tol = 0.0) const {
    for (std::size_t i = 0; i < stop_.size(); ++i) {
      const int t = static_cast<int>(i) + 1;
      if (CentipedeGame::mover(t) == player && stop_[i] > tol) return t;
    }
    return 0;
  }

 private:
  std::vector<double> stop_;
};

struct BeliefTrajectory {
  std::vector<double> p;  // p[t-1]: mover's posterior that the opponent is naive

  double at(int t) const { return p.at(static_cast<std::size_t>(t - 1)); }
};

struct PBNLKAssessment {
  StopProfile profile;
  BeliefTrajectory beliefs;
  BeliefParam lambda{0.0};
  double max_regret = 0.0;
  double max_mixing_gap = 0.0;
  double max_consistency_residual = 0.0;
};

// Level-k stop profile; A and B use different hierarchy depths because
// their level-0 opponents sit at different positions.
inline StopProfile levelk_stop_profile(int k, int rounds) {
  require(k >= 1, ErrorCode::kInvalidArgument, "level-k profile needs k >= 1");
  const CentipedeGame game = CentipedeGame::with_rounds(rounds);
  const int ha = k / 2;
  const int hb = (k + 1) / 2;
  const int a_from = ha == 0 ? game.stages() + 1 : std::max(1, 2 * (rounds - ha) + 1);
  const int b_from = std::max(2, 2 * (rounds - hb) + 2);
  std::vector<double> stop(static_cast<std::size_t>(game.stages()), 0.0);
  for (int t = 1; t <= game.stages(); ++t) {
    const int from = CentipedeGame::mover(t) == 0 ? a_from : b_from;
    stop[static_cast<std::size_t>(t - 1)] = t >= from ? 1.0 : 0.0;
  }
  return StopProfile(std::move(stop));
}

// Beliefs implied by the prior and the profile in closed form: the naive
// likelihood of the observed passes against the NLK likelihood.
inline BeliefTrajectory consistent_beliefs(const CentipedeGame& game,
                                           BeliefParam lambda,
                                           const StopProfile& profile) {
  require(profile.size() == static_cast<std::size_t>(game.stages()),
          ErrorCode::kDimensionMismatch, "profile length differs from stage count");
  const double l = lambda;
  BeliefTrajectory out;
  for (int t = 1; t <= game.stages(); ++t) {
    double naive = l;
    double nlk = 1.0 - l;
    for (int j = t - 1; j >= 1; j -= 2) {
      naive *= 1.0 - kNaiveStop;
      nlk *= 1.0 - profile.at(j);
    }
    const double denom = naive + nlk;
    // Off path (only possible at lambda = 0) the opponent is believed to be
    // an NLK player who takes.
    out.p.push_back(denom > 0.0 ? naive / denom : 0.0);
  }
  return out;
}

// Same beliefs built one observation at a time with Bayes' rule.
inline BeliefTrajectory sequential_beliefs(const CentipedeGame& game,
                                           BeliefParam lambda,
                                           const StopProfile& profile) {
  require(profile.size() == static_cast<std::size_t>(game.stages()),
          ErrorCode::kDimensionMismatch, "profile length differs from stage count");
  double p[2] = {lambda, lambda};  // belief held by A and by B
  BeliefTrajectory out;
  for (int t = 1; t <= game.stages(); ++t) {
    const int me = CentipedeGame::mover(t);
    out.p.push_back(p[me]);
    // The opponent sees this node's pass.
    double& q = p[1 - me];
    const double naive = q * (1.0 - kNaiveStop);
    const double denom = naive + (1.0 - q) * (1.0 - profile.at(t));
    q = denom > 0.0 ? naive / denom : 0.0;
  }
  return out;
}

struct NodeValue {
  double stop;
  double pass;
  double prescribed;
  double regret;
};

// Values to the mover at each node under the profile and beliefs.
inline std::vector<NodeValue> node_values(const CentipedeGame& game,
                                          const StopProfile& profile,
                                          const BeliefTrajectory& beliefs) {
  const int s = game.stages();
  require(profile.size() == static_cast<std::size_t>(s) &&
              beliefs.p.size() == static_cast<std::size_t>(s),
          ErrorCode::kDimensionMismatch, "profile/belief length mismatch");
  constexpr double take = CentipedeGame::kTakeShare;
  std::vector<NodeValue> v(static_cast<std::size_t>(s));
  for (int t = s; t >= 1; --t) {
    NodeValue nv{};
    nv.stop = take * game.pot(t);
    if (t == s) {
      nv.pass = (1.0 - take) * CentipedeGame::kGrowth * game.pot(t);
    } else {
      const double p = beliefs.at(t);
      const double r = p * kNaiveStop + (1.0 - p) * profile.at(t + 1);
      const double opp_stop = (1.0 - take) * game.pot(t + 1);
      const double later = t + 1 == s
                               ? take * CentipedeGame::kGrowth * game.pot(s)
                               : v[static_cast<std::size_t>(t + 1)].prescribed;
      nv.pass = r * opp_stop + (1.0 - r) * later;
    }
    const double sigma = profile.at(t);
    nv.prescribed = sigma * nv.stop + (1.0 - sigma) * nv.pass;
    nv.regret = std::max(nv.stop, nv.pass) - nv.prescribed;
    v[static_cast<std::size_t>(t - 1)] = nv;
  }
  return v;
}

// Fills regret, mixing gap, and consistency residual; returns the assessment.
inline PBNLKAssessment certify(const CentipedeGame& game, BeliefParam lambda,
                               StopProfile profile) {
  PBNLKAssessment out;
  out.lambda = lambda;
  out.beliefs = consistent_beliefs(game, lambda, profile);
  const BeliefTrajectory seq = sequential_beliefs(game, lambda, profile);
  for (std::size_t i = 0; i < seq.p.size(); ++i)
    out.max_consistency_residual = std::max(
        out.max_consistency_residual, std::abs(seq.p[i] - out.beliefs.p[i]));
  const auto values = node_values(game, profile, out.beliefs);
  for (int t = 1; t <= game.stages(); ++t) {
    const NodeValue& nv = values[static_cast<std::size_t>(t - 1)];
    out.max_regret = std::max(out.max_regret, nv.regret);
    const double sigma = profile.at(t);
    if (sigma > 0.0 && sigma < 1.0)
      out.max_mixing_gap = std::max(out.max_mixing_gap, std::abs(nv.stop - nv.pass));
  }
  out.profile = std::move(profile);
  return out;
}

inline bool is_certified(const PBNLKAssessment& a, double tolerance) {
  return a.max_regret <= tolerance && a.max_mixing_gap <= tolerance &&
         a.max_consistency_residual <= tolerance;
}

namespace detail {

// Mover's indifference ratio at t: the probability r that the opponent takes
// at t + 1 which makes taking now and passing equally good, given the mover
// takes at t + 2 (or collects the final pass).
inline double indifference_ratio(const CentipedeGame& game, int t) {
  constexpr double take = CentipedeGame::kTakeShare;
  const int s = game.stages();
  const double stop = take * game.pot(t);
  const double opp = (1.0 - take) * game.pot(t + 1);
  const double later = t + 1 == s ? take * CentipedeGame::kGrowth * game.pot(s)
                                  : take * game.pot(t + 2);
  return (later - stop) / (later - opp);
}

inline std::vector<double> threshold_profile(int stages, int from) {
  std::vector<double> stop(static_cast<std::size_t>(stages), 0.0);
  for (int t = from; t <= stages; ++t) stop[static_cast<std::size_t>(t - 1)] = 1.0;
  return stop;
}

// Window candidate: pass before w, mix on [w, e], take after e. Given the
// stop probability at w, each later window node is pinned by the previous
// mover's indifference. Returns +inf when the chain leaves [0,1].
inline double window_residual(const CentipedeGame& game, double lambda, int w,
                              int e, double sigma_w, std::vector<double>& stop) {
  const int s = game.stages();
  stop = threshold_profile(s, e + 1);
  stop[static_cast<std::size_t>(w - 1)] = sigma_w;
  const auto posterior = [&](int t) {
    double naive = lambda;
    double nlk = 1.0 - lambda;
    for (int j = t - 1; j >= 1; j -= 2) {
      naive *= 1.0 - kNaiveStop;
      nlk *= 1.0 - stop[static_cast<std::size_t>(j - 1)];
    }
    const double denom = naive + nlk;
    return denom > 0.0 ? naive / denom : 0.0;
  };
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int t = w; t < e; ++t) {
    const double p = posterior(t);
    if (p >= 1.0) return inf;
    const double next = (indifference_ratio(game, t) - kNaiveStop * p) / (1.0 - p);
    if (next > 1.0) return inf;
    if (next < 0.0) return -inf;
    stop[static_cast<std::size_t>(t)] = next;
  }
  const double target = (1.0 - indifference_ratio(game, e)) / (1.0 - kNaiveStop);
  return posterior(e) - target;
}

inline std::optional<std::vector<double>> solve_window(const CentipedeGame& game,
                                                       double lambda, int w,
                                                       int e) {
  std::vector<double> stop;
  const double f_lo = window_residual(game, lambda, w, e, 0.0, stop);
  if (f_lo > 0.0) return std::nullopt;
  if (f_lo == 0.0) return stop;
  const double f_hi = window_residual(game, lambda, w, e, 1.0, stop);
  if (f_hi < 0.0) return std::nullopt;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = window_residual(game, lambda, w, e, mid, stop);
    if (std::isnan(f)) return std::nullopt;
    (f < 0.0 ? lo : hi) = mid;
  }
  const double f = window_residual(game, lambda, w, e, lo, stop);
  if (!std::isfinite(f)) return std::nullopt;
  return stop;
}

}  // namespace detail

// All certified assessments among the candidate family: pure thresholds
// (latest first, so the level-1 profile leads) and mixing windows.
inline std::vector<PBNLKAssessment> enumerate_pbnlk(int rounds, BeliefParam lambda,
                                                    double tolerance = kDefaultTolerance) {
  require(tolerance > 0.0, ErrorCode::kInvalidArgument, "tolerance must be positive");
  const CentipedeGame game = CentipedeGame::with_rounds(rounds);
  const int s = game.stages();
  std::vector<PBNLKAssessment> found;
  const auto consider = [&](std::vector<double> stop) {
    auto a = certify(game, lambda, StopProfile(std::move(stop)));
    if (!is_certified(a, tolerance)) return;
    for (const auto& prev : found) {
      double diff = 0.0;
      for (int t = 1; t <= s; ++t)
        diff = std::max(diff, std::abs(prev.profile.at(t) - a.profile.at(t)));
      if (diff <= 1e-9) return;
    }
    found.push_back(std::move(a));
  };
  for (int from = s; from >= 1; --from) consider(detail::threshold_profile(s, from));
  for (int e = s - 1; e >= 2; --e)
    for (int w = e - 1; w >= 1; w -= 2)
      if (auto stop = detail::solve_window(game, lambda, w, e)) consider(std::move(*stop));
  return found;
}

inline PBNLKAssessment solve_pbnlk(int rounds, BeliefParam lambda,
                                   double tolerance = kDefaultTolerance) {
  auto found = enumerate_pbnlk(rounds, lambda, tolerance);
  if (!found.empty()) return std::move(found.front());
  // Report the level-1 candidate's residuals for diagnosis.
  const CentipedeGame game = CentipedeGame::with_rounds(rounds);
  const auto fallback =
      certify(game, lambda, StopProfile(detail::threshold_profile(game.stages(), game.stages())));
  throw NonConvergenceError(
      "no certified PBNLK assessment for lambda=" + std::to_string(double(lambda)),
      fallback.profile.values(),
      {fallback.max_regret, fallback.max_mixing_gap, fallback.max_consistency_residual});
}

// Observed play at one node.
struct NodeObservation {
  long reached = 0;
  long stopped = 0;
  // Rate as printed with the data, if any; otherwise stopped / reached.
  std::optional<double> reported_rate;

  double stop_rate() const {
    if (reported_rate) return *reported_rate;
    return reached > 0 ? static_cast<double>(stopped) / static_cast<double>(reached)
                       : 0.0;
  }
};

class NodeObservations {
 public:
  NodeObservations() = default;
  explicit NodeObservations(std::vector<NodeObservation> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      const std::string where = "node " + std::to_string(i + 1);
      require(n.reached >= 0 && n.stopped >= 0, ErrorCode::kOutOfRange,
              where + ": negative count");
      require(n.stopped <= n.reached, ErrorCode::kOutOfRange,
              where + ": stopped exceeds reached");
      if (n.reported_rate)
        require(*n.reported_rate >= 0.0 && *n.reported_rate <= 1.0,
                ErrorCode::kOutOfRange, where + ": rate outside [0,1]");
    }
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const NodeObservation& at(int t) const {
    return nodes_.at(static_cast<std::size_t>(t - 1));
  }
  const std::vector<NodeObservation>& nodes() const noexcept { return nodes_; }
  long total_reached() const {
    long n = 0;
    for (const auto& o : nodes_) n += o.reached;
    return n;
  }

 private:
  std::vector<NodeObservation> nodes_;
};

// Reach-weighted mean absolute gap between data and model stop rates.
inline double deviation_D(const NodeObservations& data, const StopProfile& model) {
  require(data.size() == model.size(), ErrorCode::kDimensionMismatch,
          "data has " + std::to_string(data.size()) + " nodes, model has " +
              std::to_string(model.size()));
  const long total = data.total_reached();
  require(total > 0, ErrorCode::kEmptyData, "no observations to compare");
  double sum = 0.0;
  for (int t = 1; t <= static_cast<int>(data.size()); ++t) {
    const auto& o = data.at(t);
    if (o.reached == 0) continue;
    sum += static_cast<double>(o.reached) * std::abs(o.stop_rate() - model.at(t));
  }
  return sum / static_cast<double>(total);
}

}  // namespace nlk::centipede

#endif  // NLK_CENTIPEDE_HPP
