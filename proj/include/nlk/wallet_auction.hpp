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

// Second-price common-value wallet auction: linear BNLK bids, level-k bid
// rules, bid-data MSE, and a grid solver for finite Bayesian games.

#ifndef NLK_WALLET_AUCTION_HPP
#define NLK_WALLET_AUCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nlk/error.hpp"
#include "nlk/game.hpp"

namespace nlk::wallet {

struct WalletGame {
  static constexpr double kSignalLow = 1.0;
  static constexpr double kSignalHigh = 4.0;
  // Naive bidders bid uniformly over the range of equilibrium bids.
  static constexpr double kNaiveBidLow = 2.0;
  static constexpr double kNaiveBidHigh = 8.0;

  static double value(double x1, double x2) { return x1 + x2; }
  static void check_signal(double x) {
    require(std::isfinite(x) && x >= kSignalLow && x <= kSignalHigh,
            ErrorCode::kOutOfRange, "signal " + std::to_string(x) + " outside [1,4]");
  }
};

struct LinearBid {
  double intercept;
  double slope;

  double operator()(double x) const {
    WalletGame::check_signal(x);
    return intercept + slope * x;
  }
};

// Below this lambda the quadratic degenerates and the limit d = 6 is used.
inline constexpr double kLambdaFloor = 1e-9;

// Bid spread d = b(4) - b(1), the positive root of
// lambda d^2 + 3(2 - 3 lambda) d - 36(1 - lambda) = 0.
inline double bnlk_spread(BeliefParam lambda) {
  const double l = lambda;
  if (l < kLambdaFloor) return 6.0;
  return 1.5 / l * (3.0 * l - 2.0 + std::sqrt(4.0 + 4.0 * l - 7.0 * l * l));
}

// Weight on a naive opponent among bids in [b(1), b(4)]: naive bid density
// 1/6 against NLK density 1/d. Equals (6 - d) / 3.
inline double bnlk_q(BeliefParam lambda) { return (6.0 - bnlk_spread(lambda)) / 3.0; }

inline LinearBid bnlk_bid(BeliefParam lambda) {
  const double d = bnlk_spread(lambda);
  const double q = (6.0 - d) / 3.0;
  const double b1 = 1.5 * q + 2.0;
  return {b1 - d / 3.0, d / 3.0};
}

struct BidInterval {
  double lo;
  double hi;
};

// Point-valued (linear or step) or set-valued bid rule.
class BidFunction {
 public:
  enum class Kind { kLinear, kStep, kBounds };

  static BidFunction linear(LinearBid line) {
    BidFunction f(Kind::kLinear);
    f.line_ = line;
    return f;
  }
  // below for x <= threshold, above otherwise.
  static BidFunction step(double threshold, double below, double above) {
    BidFunction f(Kind::kStep);
    f.threshold_ = threshold;
    f.below_ = below;
    f.above_ = above;
    return f;
  }
  // Bids under `below` when x <= threshold and over `above` otherwise.
  static BidFunction bounds(double threshold, double below, double above) {
    BidFunction f = step(threshold, below, above);
    f.kind_ = Kind::kBounds;
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  bool point_valued() const noexcept { return kind_ != Kind::kBounds; }

  double operator()(double x) const {
    WalletGame::check_signal(x);
    switch (kind_) {
      case Kind::kLinear: return line_(x);
      case Kind::kStep: return x <= threshold_ ? below_ : above_;
      case Kind::kBounds: break;
    }
    throw Error(ErrorCode::kUnsupported, "bid rule is set-valued; no point bid");
  }

  BidInterval interval(double x) const {
    if (point_valued()) {
      const double b = (*this)(x);
      return {b, b};
    }
    WalletGame::check_signal(x);
    if (x <= threshold_) return {0.0, below_};
    return {above_, std::numeric_limits<double>::infinity()};
  }

  std::string describe() const {
    const auto num = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", v);
      return std::string(buf);
    };
    switch (kind_) {
      case Kind::kLinear: return num(line_.slope) + "x + " + num(line_.intercept);
      case Kind::kStep:
        return num(below_) + " if x<=" + num(threshold_) + "; " + num(above_) + " otherwise";
      case Kind::kBounds:
        return "<" + num(below_) + " if x<=" + num(threshold_) + "; >" + num(above_) +
               " otherwise";
    }
    return {};
  }

 private:
  explicit BidFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  LinearBid line_{0.0, 0.0};
  double threshold_ = 0.0;
  double below_ = 0.0;
  double above_ = 0.0;
};

inline BidFunction bnlk_bid_function(BeliefParam lambda) {
  return BidFunction::linear(bnlk_bid(lambda));
}

// Level 1 best responds to naive bids; levels 2 and 3 follow; higher levels
// are not pinned down.
inline BidFunction levelk_bid(int k) {
  switch (k) {
    case 1: return BidFunction::linear({2.5, 1.0});
    case 2: return BidFunction::step(2.5, 3.5, 6.5);
    case 3: return BidFunction::bounds(2.5, 3.5, 6.5);
    default: break;
  }
  throw Error(ErrorCode::kUnsupported,
              "level-" + std::to_string(k) + " bids are not determined (k must be 1..3)");
}

struct AuctionRecord {
  std::string subject;
  int period = 0;
  double signal = 0.0;
  double bid = 0.0;
  bool experienced = false;

  void validate() const {
    WalletGame::check_signal(signal);
    require(std::isfinite(bid) && bid >= 0.0, ErrorCode::kOutOfRange,
            "bid must be finite and nonnegative");
  }
};

inline double mse_bids(const std::vector<AuctionRecord>& records, const BidFunction& f) {
  require(!records.empty(), ErrorCode::kEmptyData, "no auction records");
  require(f.point_valued(), ErrorCode::kUnsupported,
          "MSE undefined for a set-valued bid rule");
  double sum = 0.0;
  for (const auto& r : records) {
    r.validate();
    const double e = r.bid - f(r.signal);
    sum += e * e;
  }
  return sum / static_cast<double>(records.size());
}

// Finite Bayesian game: `values(opp)` returns, for each own type and action,
// the expected payoff against opponents whose type-contingent mixed
// strategies are the rows of `opp`, conditioned on the own type.
struct DiscreteBayesianGame {
  std::vector<double> types;
  std::vector<double> actions;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> values;
};

using PayoffFn = std::function<double(std::size_t own_type, std::size_t opp_type,
                                      std::size_t own_action, std::size_t opp_action)>;

// Direct construction from a joint prior over (own, opp) types and a payoff
// callback; cost per evaluation is types^2 * actions * support size.
inline DiscreteBayesianGame make_bayesian_game(std::vector<double> types,
                                               std::vector<double> actions,
                                               const Eigen::MatrixXd& prior, PayoffFn u) {
  const auto nt = static_cast<Eigen::Index>(types.size());
  const auto na = static_cast<Eigen::Index>(actions.size());
  require(nt > 0 && na > 0, ErrorCode::kEmptyData, "empty type or action grid");
  require(prior.rows() == nt && prior.cols() == nt, ErrorCode::kDimensionMismatch,
          "prior must be types x types");
  require(prior.allFinite() && prior.minCoeff() >= 0.0 &&
              std::abs(prior.sum() - 1.0) <= 1e-9,
          ErrorCode::kOutOfRange, "prior must be a probability table");
  Eigen::MatrixXd cond = prior;
  for (Eigen::Index i = 0; i < nt; ++i) {
    const double row = prior.row(i).sum();
    require(row > 0.0, ErrorCode::kOutOfRange, "type with zero prior mass");
    cond.row(i) /= row;
  }
  auto values = [cond, nt, na, u = std::move(u)](const Eigen::MatrixXd& opp) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(nt, na);
    for (Eigen::Index j = 0; j < nt; ++j)
      for (Eigen::Index b = 0; b < na; ++b) {
        const double m = opp(j, b);
        if (m == 0.0) continue;
        for (Eigen::Index i = 0; i < nt; ++i) {
          const double w = cond(i, j) * m;
          if (w == 0.0) continue;
          for (Eigen::Index a = 0; a < na; ++a)
            v(i, a) += w * u(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                             static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
      }
    return v;
  };
  return {std::move(types), std::move(actions), std::move(values)};
}

struct DiscreteBnlkOptions {
  int max_iterations = 50000;
  double tolerance = 1e-3;  // per-type regret
};

struct DiscreteBnlkResult {
  Eigen::MatrixXd strategy;  // rows: types, columns: actions
  double max_regret = 0.0;
  int iterations = 0;

  std::vector<double> mean_action(const std::vector<double>& actions) const {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < strategy.rows(); ++i) {
      double m = 0.0;
      for (Eigen::Index a = 0; a < strategy.cols(); ++a)
        m += strategy(i, a) * actions[static_cast<std::size_t>(a)];
      out.push_back(m);
    }
    return out;
  }
};

namespace detail {

inline Eigen::MatrixXd pure_best_response(const Eigen::MatrixXd& v) {
  Eigen::MatrixXd br = Eigen::MatrixXd::Zero(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    Eigen::Index best = 0;
    v.row(i).maxCoeff(&best);  // first maximizer
    br(i, best) = 1.0;
  }
  return br;
}

inline double max_regret(const Eigen::MatrixXd& v, const Eigen::MatrixXd& sigma) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    worst = std::max(worst, v.row(i).maxCoeff() - v.row(i).dot(sigma.row(i)));
  return worst;
}

}  // namespace detail

// Fictitious play on type-contingent mixed strategies against the lambda
// blend of naive and current play. Starts from the best response to naive
// play, so lambda = 1 needs no iterations.
inline DiscreteBnlkResult solve_bnlk_discrete(const DiscreteBayesianGame& game,
                                              BeliefParam lambda,
                                              const Eigen::MatrixXd& naive,
                                              const DiscreteBnlkOptions& options = {}) {
  const auto nt = static_cast<Eigen::Index>(game.types.size());
  const auto na = static_cast<Eigen::Index>(game.actions.size());
  require(options.max_iterations >= 1 && options.tolerance > 0.0,
          ErrorCode::kInvalidArgument, "invalid discrete solver options");
  require(naive.rows() == nt && naive.cols() == na, ErrorCode::kDimensionMismatch,
          "naive strategy must be types x actions");
  const double l = lambda;
  const Eigen::MatrixXd v_naive = game.values(naive);
  Eigen::MatrixXd sigma = detail::pure_best_response(v_naive);
  Eigen::MatrixXd v_sigma = l < 1.0 ? game.values(sigma) : Eigen::MatrixXd::Zero(nt, na);
  DiscreteBnlkResult out;
  for (int k = 0; k < options.max_iterations; ++k) {
    const Eigen::MatrixXd v = l * v_naive + (1.0 - l) * v_sigma;
    out.max_regret = detail::max_regret(v, sigma);
    out.iterations = k;
    if (out.max_regret <= options.tolerance) {
      out.strategy = std::move(sigma);
      return out;
    }
    const Eigen::MatrixXd br = detail::pure_best_response(v);
    const double step = 1.0 / (k + 2.0);
    sigma = (1.0 - step) * sigma + step * br;
    v_sigma = (1.0 - step) * v_sigma + step * game.values(br);
  }
  throw NonConvergenceError(
      "discrete BNLK did not reach regret tolerance",
      std::vector<double>(sigma.data(), sigma.data() + sigma.size()), {out.max_regret});
}

// Uniform signal and bid grids for the wallet game; naive bids uniform
// over the bid grid.
inline DiscreteBayesianGame wallet_discrete_game(std::size_t signal_points,
                                                 std::size_t bid_points) {
  require(signal_points >= 2 && bid_points >= 2, ErrorCode::kInvalidArgument,
          "grids need at least two points");
  const auto grid = [](double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
      g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
  };
  auto xs = grid(WalletGame::kSignalLow, WalletGame::kSignalHigh, signal_points);
  auto bs = grid(WalletGame::kNaiveBidLow, WalletGame::kNaiveBidHigh, bid_points);
  // With independent uniform signals, V(x, b) = x * M0(b) + M1(b) where M0 is
  // the (tie-halved) win mass and M1 the expected (y - price) over wins.
  auto values = [xs, bs](const Eigen::MatrixXd& opp) {
    const auto nt = static_cast<Eigen::Index>(xs.size());
    const auto na = static_cast<Eigen::Index>(bs.size());
    const double py = 1.0 / static_cast<double>(nt);
    Eigen::VectorXd m0 = Eigen::VectorXd::Zero(na);
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(na);
    for (Eigen::Index j = 0; j < nt; ++j)
      for (Eigen::Index b = 0; b < na; ++b) {
        const double w = py * opp(j, b);
        m0(b) += w;
        m1(b) += w * (xs[static_cast<std::size_t>(j)] - bs[static_cast<std::size_t>(b)]);
      }
    Eigen::MatrixXd v(nt, na);
    double c0 = 0.0;
    double c1 = 0.0;
    for (Eigen::Index a = 0; a < na; ++a) {
      const double w0 = c0 + 0.5 * m0(a);
      const double w1 = c1 + 0.5 * m1(a);
      for (Eigen::Index i = 0; i < nt; ++i) v(i, a) = xs[static_cast<std::size_t>(i)] * w0 + w1;
      c0 += m0(a);
      c1 += m1(a);
    }
    return v;
  };
  return {std::move(xs), std::move(bs), std::move(values)};
}

// Second-price payoff on the wallet grids; used to cross-check the fast
// value oracle.
inline double wallet_payoff(double own_signal, double opp_signal, double own_bid,
                            double opp_bid) {
  const double v = WalletGame::value(own_signal, opp_signal);
  if (own_bid > opp_bid) return v - opp_bid;
  if (own_bid == opp_bid) return 0.5 * (v - opp_bid);
  return 0.0;
}

inline Eigen::MatrixXd uniform_naive(std::size_t types, std::size_t actions) {
  return Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(types),
                                   static_cast<Eigen::Index>(actions),
                                   1.0 / static_cast<double>(actions));
}

}  // namespace nlk::wallet

#endif  // NLK_WALLET_AUCTION_HPP
