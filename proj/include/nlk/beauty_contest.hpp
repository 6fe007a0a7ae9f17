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

// Three-player guessing game with target 7/10 of the mean guess. The
// closest guess wins a prize of 1; ties split it equally.

#ifndef NLK_BEAUTY_CONTEST_HPP
#define NLK_BEAUTY_CONTEST_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "nlk/error.hpp"
#include "nlk/game.hpp"

namespace nlk::beauty {

inline constexpr int kPlayers = 3;
inline constexpr int kMaxGuess = 100;

// Probability that a guess g in [0,1] wins against two naive players who
// guess uniformly on [0,1].
inline double win_probability(double g) {
  require(std::isfinite(g) && g >= 0.0 && g <= 1.0, ErrorCode::kOutOfRange,
          "guess must lie in [0,1]");
  const double h = 1.0 - g;
  if (g < 7.0 / 16.0) {
    const double a = 7.0 - 16.0 * g;
    return h * h - a * a / 56.0 + (2.0 / 7.0) * (7.0 - 12.0 * g) * g;
  }
  if (g < 7.0 / 8.0) {
    const double a = 7.0 - 8.0 * g;
    return h * h + a * a / 56.0;
  }
  return h * h;
}

// Symmetric NLK guess on the continuum where a pure one exists.
inline double nlk_guess(BeliefParam lambda) {
  if (lambda.value() == 0.0) return 0.0;
  if (lambda.value() == 1.0) return 2.0 / 7.0;
  throw Error(ErrorCode::kUnsupported,
              "no pure-strategy NLK guess on the continuum for 0 < lambda < 1; "
              "the mixed solution is not computed");
}

// Prize shares in sixths (so two- and three-way splits stay integral).
inline std::array<int, 3> shares6(int g1, int g2, int g3) {
  const int sum = g1 + g2 + g3;
  // |g - 7 sum / 30| scaled by 30.
  const std::array<int, 3> dist = {std::abs(30 * g1 - 7 * sum),
                                   std::abs(30 * g2 - 7 * sum),
                                   std::abs(30 * g3 - 7 * sum)};
  const int best = std::min({dist[0], dist[1], dist[2]});
  int winners = 0;
  for (int d : dist) winners += d == best;
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = dist[i] == best ? 6 / winners : 0;
  return out;
}

inline std::vector<int> integer_grid(int step) {
  require(step >= 1 && step <= kMaxGuess, ErrorCode::kInvalidArgument,
          "grid step must be in [1,100]");
  std::vector<int> g;
  for (int v = 0; v <= kMaxGuess; v += step) g.push_back(v);
  return g;
}

namespace detail {

// Share sums in sixths: rivals both at g; one at g and one naive (summed
// over the grid); both naive (summed over grid pairs).
struct ShareSums {
  long long both_fixed;
  long long one_naive;
  long long both_naive;
};

inline ShareSums share_sums(int own, int g, const std::vector<int>& grid) {
  ShareSums s{shares6(own, g, g)[0], 0, 0};
  for (int r : grid) s.one_naive += shares6(own, g, r)[0];
  for (int r1 : grid)
    for (int r2 : grid) s.both_naive += shares6(own, r1, r2)[0];
  return s;
}

// Payoff scaled by 6 * M^2 where M is the grid size.
inline double scaled_payoff(const ShareSums& s, double lambda, double m) {
  const double k = 1.0 - lambda;
  return k * k * m * m * static_cast<double>(s.both_fixed) +
         2.0 * lambda * k * m * static_cast<double>(s.one_naive) +
         lambda * lambda * static_cast<double>(s.both_naive);
}

}  // namespace detail

// Expected prize of guessing `own` when each rival independently is naive
// (uniform on the grid) with probability lambda and guesses g otherwise.
inline double expected_share(int own, int g, BeliefParam lambda, int step) {
  const auto grid = integer_grid(step);
  const double m = static_cast<double>(grid.size());
  return detail::scaled_payoff(detail::share_sums(own, g, grid), lambda, m) / (6.0 * m * m);
}

struct IntegerCheck {
  bool is_equilibrium;
  int best_deviation;  // equals g when no deviation gains
  double payoff;
  double best_payoff;
  double gain;
};

// Gains below this fraction of the prize count as ties.
inline constexpr double kGainTolerance = 1e-12;

inline IntegerCheck verify_integer_pure(int g, BeliefParam lambda, int step) {
  const auto grid = integer_grid(step);
  require(g >= 0 && g <= kMaxGuess && g % step == 0, ErrorCode::kOutOfRange,
          "guess " + std::to_string(g) + " not on the grid");
  const double m = static_cast<double>(grid.size());
  const double scale = 6.0 * m * m;
  const double base = detail::scaled_payoff(detail::share_sums(g, g, grid), lambda, m);
  IntegerCheck out{true, g, base / scale, base / scale, 0.0};
  double best = base;
  for (int d : grid) {
    if (d == g) continue;
    const double v = detail::scaled_payoff(detail::share_sums(d, g, grid), lambda, m);
    if (v > best) {
      best = v;
      out.best_deviation = d;
    }
  }
  out.best_payoff = best / scale;
  out.gain = out.best_payoff - out.payoff;
  out.is_equilibrium = out.gain <= kGainTolerance;
  if (out.is_equilibrium) {
    out.best_deviation = g;
    out.best_payoff = out.payoff;
    out.gain = 0.0;
  }
  return out;
}

}  // namespace nlk::beauty

#endif  // NLK_BEAUTY_CONTEST_HPP
