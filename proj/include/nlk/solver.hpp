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

// Lambda-NLK equilibria of finite two-player games.
//
// A profile (x, y) is a lambda-NLK equilibrium when each player's mix is a
// best response to the blend "lambda * naive + (1 - lambda) * opponent's
// equilibrium mix". Because the naive part contributes a fixed payoff vector,
// fixing the two supports turns the indifference conditions into a linear
// system, which is what the support enumeration below solves.

#ifndef NLK_SOLVER_HPP
#define NLK_SOLVER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nlk/error.hpp"
#include "nlk/game.hpp"

namespace nlk {

using Profile = std::array<MixedStrategy, 2>;

enum class SolverMethod { kSupportEnumeration, kDampedIteration };

struct SolverOptions {
  SolverMethod method = SolverMethod::kSupportEnumeration;
  double damping = 0.5;
  int max_iterations = 10000;
  double tolerance = 1e-10;

  void validate() const {
    require(damping > 0.0 && damping <= 1.0, ErrorCode::kOutOfRange,
            "damping must lie in (0,1]");
    require(max_iterations >= 1, ErrorCode::kOutOfRange,
            "max_iterations must be at least 1");
    require(tolerance > 0.0, ErrorCode::kOutOfRange,
            "tolerance must be positive");
  }
};

inline constexpr std::size_t kMaxEnumerationStrategies = 12;

struct NlkEquilibrium {
  Profile profile;
  double lambda = 0.0;
  double epsilon = 0.0;  // largest pure-deviation gain found by verification

  bool symmetric(double tol = 1e-9) const {
    if (profile[0].size() != profile[1].size()) return false;
    for (std::size_t s = 0; s < profile[0].size(); ++s)
      if (std::abs(profile[0][s] - profile[1][s]) > tol) return false;
    return true;
  }
  std::size_t support_size() const {
    return profile[0].support().size() + profile[1].support().size();
  }
};

struct Verification {
  bool ok = true;
  double max_regret = 0.0;
  std::size_t player = 0;     // player attaining max_regret
  std::size_t deviation = 0;  // that player's best pure deviation
};

// Largest gain any player gets from a pure deviation under the blended
// payoff; ok iff that gain is at most epsilon.
inline Verification verify_equilibrium(const NormalFormGame& game,
                                       BeliefParam lambda,
                                       const NaiveProfile& naive,
                                       const Profile& profile, double epsilon) {
  naive.check_against(game);
  Verification out;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& opp_mix = profile[1 - i];
    const auto values =
        blended_pure_payoffs(game, i, naive, opp_mix, lambda);
    const double current =
        blended_payoff(game, i, profile[i], naive, opp_mix, lambda);
    const auto best = std::max_element(values.begin(), values.end());
    const double regret = std::max(0.0, *best - current);
    if (i == 0 || regret > out.max_regret) {
      out.max_regret = regret;
      out.player = i;
      out.deviation = static_cast<std::size_t>(best - values.begin());
    }
  }
  out.ok = out.max_regret <= epsilon;
  return out;
}

namespace detail {

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Finds the opponent mix on `opp_support` that makes `player` indifferent
// across `own_support` under the blended payoff. Returns false if the
// system is inconsistent or the solution leaves the simplex.
inline bool indifference_mix(const NormalFormGame& game, std::size_t player,
                             const std::vector<double>& vs_naive, double lambda,
                             const std::vector<std::size_t>& own_support,
                             const std::vector<std::size_t>& opp_support,
                             std::vector<double>& opp_mix) {
  const auto k = static_cast<Eigen::Index>(own_support.size());
  const auto m = static_cast<Eigen::Index>(opp_support.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k + 1, m + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
  const auto& u = game.payoffs(player);
  for (Eigen::Index r = 0; r < k; ++r) {
    const auto s = static_cast<Eigen::Index>(own_support[r]);
    for (Eigen::Index c = 0; c < m; ++c)
      a(r, c) = (1.0 - lambda) *
                u(s, static_cast<Eigen::Index>(opp_support[c]));
    a(r, m) = -1.0;
    b(r) = -lambda * vs_naive[own_support[r]];
  }
  a.row(k).head(m).setOnes();
  b(k) = 1.0;

  const Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(b);
  const double scale = 1.0 + b.cwiseAbs().maxCoeff() + a.cwiseAbs().maxCoeff();
  if (!sol.allFinite() || (a * sol - b).cwiseAbs().maxCoeff() > 1e-9 * scale)
    return false;

  opp_mix.assign(game.num_strategies(1 - player), 0.0);
  for (Eigen::Index c = 0; c < m; ++c) {
    if (sol(c) < -1e-12) return false;
    opp_mix[opp_support[c]] = std::max(0.0, sol(c));
  }
  return true;
}

inline bool same_profile(const Profile& a, const Profile& b, double tol) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t s = 0; s < a[i].size(); ++s)
      if (std::abs(a[i][s] - b[i][s]) > tol) return false;
  return true;
}

inline std::vector<NlkEquilibrium> enumerate_supports(
    const NormalFormGame& game, BeliefParam lambda, const NaiveProfile& naive,
    const SolverOptions& options) {
  const std::size_t n0 = game.num_strategies(0);
  const std::size_t n1 = game.num_strategies(1);
  require(n0 <= kMaxEnumerationStrategies && n1 <= kMaxEnumerationStrategies,
          ErrorCode::kUnsupported,
          "support enumeration handles at most 12 strategies per player; use "
          "damped iteration");

  const std::array<std::vector<double>, 2> vs_naive = {
      pure_payoffs(game, 0, naive[1]), pure_payoffs(game, 1, naive[0])};

  std::vector<NlkEquilibrium> found;
  std::vector<double> x, y;
  for (std::size_t k = 1; k <= std::min(n0, n1); ++k) {
    for_each_subset(n0, k, [&](const std::vector<std::size_t>& s0) {
      for_each_subset(n1, k, [&](const std::vector<std::size_t>& s1) {
        // y keeps player 0 indifferent on s0; x keeps player 1 indifferent
        // on s1.
        if (!indifference_mix(game, 0, vs_naive[0], lambda, s0, s1, y)) return;
        if (!indifference_mix(game, 1, vs_naive[1], lambda, s1, s0, x)) return;
        Profile profile = {MixedStrategy::normalized(x),
                           MixedStrategy::normalized(y)};
        const auto check =
            verify_equilibrium(game, lambda, naive, profile, options.tolerance);
        if (!check.ok) return;
        for (const auto& eq : found)
          if (same_profile(eq.profile, profile, 1e-9)) return;
        found.push_back({std::move(profile), lambda.value(), check.max_regret});
      });
    });
  }
  return found;
}

inline std::size_t lowest_best_response(const std::vector<double>& values) {
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

// Damped best-response iteration toward the fixed point of
// "best respond to lambda * naive + (1 - lambda) * current profile".
inline NlkEquilibrium damped_iteration(const NormalFormGame& game,
                                       BeliefParam lambda,
                                       const NaiveProfile& naive,
                                       const SolverOptions& options) {
  Profile current = {naive[0], naive[1]};
  Verification check;
  for (int it = 0; it < options.max_iterations; ++it) {
    check = verify_equilibrium(game, lambda, naive, current, options.tolerance);
    if (check.ok) return {current, lambda.value(), check.max_regret};
    Profile next = current;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto values =
          blended_pure_payoffs(game, i, naive, current[1 - i], lambda);
      const auto br = MixedStrategy::pure(values.size(),
                                          lowest_best_response(values));
      next[i] = br.blend(current[i], options.damping);
    }
    current = std::move(next);
  }
  std::vector<double> flat = current[0].vector();
  flat.insert(flat.end(), current[1].vector().begin(),
              current[1].vector().end());
  throw NonConvergenceError(
      "damped iteration did not converge in " +
          std::to_string(options.max_iterations) +
          " iterations (max regret " + std::to_string(check.max_regret) + ")",
      std::move(flat), {check.max_regret});
}

}  // namespace detail

// All lambda-NLK equilibria found by the chosen method. Support enumeration
// returns every equilibrium with equal-size supports in lexicographic support
// order; damped iteration returns the first converged fixed point.
inline std::vector<NlkEquilibrium> solve_nlk(const NormalFormGame& game,
                                             BeliefParam lambda,
                                             const NaiveProfile& naive,
                                             const SolverOptions& options = {}) {
  options.validate();
  naive.check_against(game);
  if (options.method == SolverMethod::kDampedIteration)
    return {detail::damped_iteration(game, lambda, naive, options)};
  auto found = detail::enumerate_supports(game, lambda, naive, options);
  if (found.empty())
    throw NonConvergenceError(
        "support enumeration found no certified equilibrium", {});
  return found;
}

inline std::vector<NlkEquilibrium> solve_nlk(const NormalFormGame& game,
                                             BeliefParam lambda,
                                             const SolverOptions& options = {}) {
  return solve_nlk(game, lambda, NaiveProfile::uniform(game), options);
}

// Index of the equilibrium used downstream: a symmetric one if any exists
// (largest combined support among those), else the first one.
inline std::size_t select_equilibrium(
    const std::vector<NlkEquilibrium>& equilibria) {
  require(!equilibria.empty(), ErrorCode::kInvalidArgument,
          "no equilibria to select from");
  std::size_t best = equilibria.size();
  for (std::size_t e = 0; e < equilibria.size(); ++e) {
    if (!equilibria[e].symmetric()) continue;
    if (best == equilibria.size() ||
        equilibria[e].support_size() > equilibria[best].support_size())
      best = e;
  }
  return best == equilibria.size() ? 0 : best;
}

// Dove/Hawk chicken game; strategy 0 is Dove, 1 is Hawk.
inline NormalFormGame chicken_game() {
  Eigen::MatrixXd u(2, 2);
  u << 30, 20,
       70, 0;
  return NormalFormGame::symmetric({"Dove", "Hawk"}, u);
}

}  // namespace nlk

#endif  // NLK_SOLVER_HPP
