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

// Fitting models to choice data: percentage MSE, logit choice with a
// precision parameter, single-type and mixture likelihoods, BIC and AIC.

#ifndef NLK_ESTIMATION_HPP
#define NLK_ESTIMATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nlk/error.hpp"
#include "nlk/game.hpp"
#include "nlk/optimize.hpp"

namespace nlk {

// Observation counts per action. Counts may be fractional when they are
// reconstructed from published percentages.
class ChoiceDataset {
 public:
  ChoiceDataset(std::vector<std::string> labels, std::vector<double> counts)
      : labels_(std::move(labels)), counts_(std::move(counts)) {
    require(!counts_.empty(), ErrorCode::kEmptyData, "choice dataset has no actions");
    require(labels_.size() == counts_.size(), ErrorCode::kDimensionMismatch,
            "labels and counts differ in length");
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      require(std::isfinite(counts_[i]), ErrorCode::kNonFinite,
              "count for action " + labels_[i] + " not finite");
      require(counts_[i] >= 0.0, ErrorCode::kOutOfRange,
              "negative count for action " + labels_[i]);
      total_ += counts_[i];
    }
    require(total_ > 0.0, ErrorCode::kEmptyData, "choice dataset has no observations");
  }

  // Counts = percent * n / 100.
  static ChoiceDataset from_percentages(std::vector<std::string> labels,
                                        const std::vector<double>& percents, double n) {
    require(n > 0.0, ErrorCode::kInvalidArgument, "sample size must be positive");
    std::vector<double> counts;
    for (double p : percents) counts.push_back(p * n / 100.0);
    return ChoiceDataset(std::move(labels), std::move(counts));
  }

  std::size_t size() const noexcept { return counts_.size(); }
  double n() const noexcept { return total_; }
  const std::vector<double>& counts() const noexcept { return counts_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::vector<double> frequencies() const {
    std::vector<double> f;
    for (double c : counts_) f.push_back(c / total_);
    return f;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> counts_;
  double total_ = 0.0;
};

class PrecisionParam {
 public:
  explicit PrecisionParam(double eta) : eta_(eta) {
    require(std::isfinite(eta) && eta >= 0.0, ErrorCode::kOutOfRange,
            "precision must be finite and >= 0");
  }
  double value() const noexcept { return eta_; }
  operator double() const noexcept { return eta_; }

 private:
  double eta_;
};

// exp(eta * pi(s)) / sum exp(eta * pi(s')), shifted by the max payoff.
inline MixedStrategy logit_probs(const std::vector<double>& payoffs, PrecisionParam eta) {
  require(!payoffs.empty(), ErrorCode::kEmptyData, "no payoffs");
  for (double v : payoffs)
    require(std::isfinite(v), ErrorCode::kNonFinite, "payoff not finite");
  const double top = *std::max_element(payoffs.begin(), payoffs.end());
  std::vector<double> w;
  for (double v : payoffs) w.push_back(std::exp(eta * (v - top)));
  return MixedStrategy::normalized(std::move(w));
}

// A behavioral type: logit over expected payoffs, or a fixed distribution.
class TypeSpec {
 public:
  static TypeSpec logit(std::string label, std::vector<double> payoffs) {
    for (double v : payoffs)
      require(std::isfinite(v), ErrorCode::kNonFinite, "type payoff not finite");
    TypeSpec t(std::move(label));
    t.payoffs_ = std::move(payoffs);
    return t;
  }
  static TypeSpec fixed(std::string label, MixedStrategy dist) {
    TypeSpec t(std::move(label));
    t.dist_ = std::move(dist);
    return t;
  }

  const std::string& label() const noexcept { return label_; }
  bool uses_precision() const noexcept { return payoffs_.has_value(); }
  std::size_t size() const { return payoffs_ ? payoffs_->size() : dist_->size(); }
  const std::vector<double>& payoffs() const {
    require(payoffs_.has_value(), ErrorCode::kInvalidArgument,
            "type " + label_ + " has no payoffs");
    return *payoffs_;
  }

  MixedStrategy choice_probs(PrecisionParam eta) const {
    return payoffs_ ? logit_probs(*payoffs_, eta) : *dist_;
  }

 private:
  explicit TypeSpec(std::string label) : label_(std::move(label)) {}

  std::string label_;
  std::optional<std::vector<double>> payoffs_;
  std::optional<MixedStrategy> dist_;
};

inline double bic(int k, double n, double ll) {
  require(k >= 0 && n >= 1.0, ErrorCode::kInvalidArgument, "BIC needs k >= 0, n >= 1");
  return k * std::log(n) - 2.0 * ll;
}

inline double aic(int k, double ll) {
  require(k >= 0, ErrorCode::kInvalidArgument, "AIC needs k >= 0");
  return 2.0 * k - 2.0 * ll;
}

enum class Objective { kMse, kLogLikelihood };

struct FitResult {
  std::string model;
  Objective objective_kind = Objective::kMse;
  double objective = 0.0;  // MSE or log-likelihood
  std::optional<double> lambda;
  std::optional<double> rho;
  std::optional<double> eta;
  std::vector<std::string> type_labels;
  std::vector<double> weights;
  int k = 0;        // free parameters
  double n = 0.0;   // observations
  double bic = std::numeric_limits<double>::quiet_NaN();
  double aic = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  std::vector<double> trace;  // objective per iteration, where iterative

  void set_loglik(double ll, int free_params, double obs) {
    objective_kind = Objective::kLogLikelihood;
    objective = ll;
    k = free_params;
    n = obs;
    bic = nlk::bic(k, n, ll);
    aic = nlk::aic(k, ll);
  }
};

inline void check_sizes(const MixedStrategy& pred, const ChoiceDataset& data) {
  require(pred.size() == data.size(), ErrorCode::kDimensionMismatch,
          "prediction has " + std::to_string(pred.size()) + " actions, data has " +
              std::to_string(data.size()));
}

// Mean over actions of the squared gap in percentage points.
inline double mse_profile(const MixedStrategy& pred, const ChoiceDataset& data) {
  check_sizes(pred, data);
  const auto f = data.frequencies();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e = 100.0 * (pred[i] - f[i]);
    sum += e * e;
  }
  return sum / static_cast<double>(f.size());
}

using LambdaFamily = std::function<MixedStrategy(double)>;

inline constexpr double kLambdaTolerance = 1e-4;

inline FitResult fit_lambda_mse(const LambdaFamily& model, const ChoiceDataset& data,
                                const GridSpec& grid = {},
                                double tol = kLambdaTolerance) {
  require(grid.lo >= 0.0 && grid.hi <= 1.0, ErrorCode::kOutOfRange,
          "lambda grid must lie in [0,1]");
  const auto best = grid_then_golden(
      [&](double l) { return mse_profile(model(l), data); }, grid, tol);
  FitResult r;
  r.model = "nlk";
  r.objective = best.fx;
  r.lambda = best.x;
  r.k = 1;
  r.n = data.n();
  r.iterations = best.evaluations;
  return r;
}

// Best rho in [0,1] for rho * naive + (1 - rho) * pred; MSE is quadratic in
// rho so the minimizer is closed form.
inline std::pair<double, double> best_rho(const MixedStrategy& pred,
                                          const MixedStrategy& naive,
                                          const ChoiceDataset& data) {
  check_sizes(pred, data);
  check_sizes(naive, data);
  const auto f = data.frequencies();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e = pred[i] - f[i];
    const double dir = naive[i] - pred[i];
    num += e * dir;
    den += dir * dir;
  }
  const double rho = den > 0.0 ? std::clamp(-num / den, 0.0, 1.0) : 0.0;
  return {rho, mse_profile(naive.blend(pred, rho), data)};
}

inline FitResult fit_lambda_rho_mse(const LambdaFamily& model, const MixedStrategy& naive,
                                    const ChoiceDataset& data, const GridSpec& grid = {},
                                    double tol = kLambdaTolerance) {
  require(grid.lo >= 0.0 && grid.hi <= 1.0, ErrorCode::kOutOfRange,
          "lambda grid must lie in [0,1]");
  const auto best = grid_then_golden(
      [&](double l) { return best_rho(model(l), naive, data).second; }, grid, tol);
  FitResult r;
  r.model = "nlk-rho";
  r.lambda = best.x;
  const auto [rho, mse] = best_rho(model(best.x), naive, data);
  r.rho = rho;
  r.objective = mse;
  r.k = 2;
  r.n = data.n();
  r.iterations = best.evaluations;
  return r;
}

namespace detail {

// Euclidean projection onto the probability simplex.
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

}  // namespace detail

// Weights on the simplex minimizing the MSE of the mixed prediction;
// projected gradient with step 1/L on the convex quadratic.
inline FitResult fit_simplex_mse(const std::vector<MixedStrategy>& components,
                                 const std::vector<std::string>& labels,
                                 const ChoiceDataset& data, int max_iterations = 100000) {
  require(!components.empty() && labels.size() == components.size(),
          ErrorCode::kInvalidArgument, "need one label per component");
  const auto na = static_cast<Eigen::Index>(data.size());
  const auto m = static_cast<Eigen::Index>(components.size());
  Eigen::MatrixXd a(na, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    check_sizes(components[static_cast<std::size_t>(j)], data);
    for (Eigen::Index i = 0; i < na; ++i)
      a(i, j) = components[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  const auto f = data.frequencies();
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(f.data(), na);
  const Eigen::MatrixXd h = a.transpose() * a;
  const double lip = std::max(h.eigenvalues().real().maxCoeff(), 1e-12);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  int it = 0;
  for (; it < max_iterations; ++it) {
    const Eigen::VectorXd grad = a.transpose() * (a * w - y);
    const Eigen::VectorXd next = detail::project_simplex(w - grad / lip);
    const double change = (next - w).lpNorm<Eigen::Infinity>();
    w = next;
    if (change < 1e-14) break;
  }
  FitResult r;
  r.model = "simplex-mixture";
  r.type_labels = labels;
  r.weights.assign(w.data(), w.data() + w.size());
  std::vector<double> mix(static_cast<std::size_t>(na));
  const Eigen::VectorXd p = a * w;
  for (Eigen::Index i = 0; i < na; ++i) mix[static_cast<std::size_t>(i)] = p(i);
  r.objective = mse_profile(MixedStrategy::normalized(mix), data);
  r.k = static_cast<int>(m) - 1;
  r.n = data.n();
  r.iterations = it;
  return r;
}

// Sum over actions of count * ln p; -inf when an observed action has
// probability zero.
inline double loglik(const ChoiceDataset& data, const MixedStrategy& probs) {
  check_sizes(probs, data);
  double ll = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double c = data.counts()[i];
    if (c == 0.0) continue;
    if (probs[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += c * std::log(probs[i]);
  }
  return ll;
}

inline double loglik(const ChoiceDataset& data, const TypeSpec& type, PrecisionParam eta) {
  return loglik(data, type.choice_probs(eta));
}

inline constexpr double kPrecisionTolerance = 1e-6;

inline FitResult fit_precision(const ChoiceDataset& data, const TypeSpec& type,
                               double tol = kPrecisionTolerance) {
  FitResult r;
  r.model = type.label();
  r.type_labels = {type.label()};
  r.weights = {1.0};
  if (!type.uses_precision()) {
    r.set_loglik(loglik(data, type, PrecisionParam(0.0)), 0, data.n());
    return r;
  }
  // LL is concave in eta for a single logit type.
  const auto best = bracket_and_minimize(
      [&](double eta) { return -loglik(data, type, PrecisionParam(eta)); }, 0.0, 0.1, tol);
  r.eta = best.x;
  r.iterations = best.evaluations;
  r.set_loglik(-best.fx, 1, data.n());
  return r;
}

inline double mixture_loglik(const ChoiceDataset& data, const std::vector<TypeSpec>& types,
                             const std::vector<double>& weights, PrecisionParam eta) {
  require(types.size() == weights.size(), ErrorCode::kDimensionMismatch,
          "one weight per type");
  std::vector<double> mix(data.size(), 0.0);
  for (std::size_t t = 0; t < types.size(); ++t) {
    const auto p = types[t].choice_probs(eta);
    check_sizes(p, data);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += weights[t] * p[i];
  }
  double ll = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double c = data.counts()[i];
    if (c == 0.0) continue;
    if (mix[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += c * std::log(mix[i]);
  }
  return ll;
}

struct MixtureOptions {
  int max_iterations = 20000;
  double tolerance = 1e-8;  // stop when LL improves by less
};

// Alternates an EM update of the weights with a scalar maximization over the
// shared precision; each half-step can only raise the likelihood.
inline FitResult fit_mixture(const ChoiceDataset& data, const std::vector<TypeSpec>& types,
                             const MixtureOptions& options = {}) {
  require(!types.empty(), ErrorCode::kInvalidArgument, "mixture needs at least one type");
  if (types.size() == 1) return fit_precision(data, types.front());
  const std::size_t m = types.size();
  const bool any_logit =
      std::any_of(types.begin(), types.end(), [](const TypeSpec& t) { return t.uses_precision(); });
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  const auto maximize_eta = [&](const std::vector<double>& weights) {
    if (!any_logit) return 0.0;
    return bracket_and_minimize(
               [&](double eta) {
                 return -mixture_loglik(data, types, weights, PrecisionParam(eta));
               },
               0.0, 0.1, kPrecisionTolerance * 1e-2)
        .x;
  };
  double eta = maximize_eta(w);
  double ll = mixture_loglik(data, types, w, PrecisionParam(eta));
  FitResult r;
  r.trace.push_back(ll);
  for (int it = 1; it <= options.max_iterations; ++it) {
    std::vector<MixedStrategy> probs;
    for (const auto& t : types) probs.push_back(t.choice_probs(PrecisionParam(eta)));
    std::vector<double> next(m, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double c = data.counts()[i];
      if (c == 0.0) continue;
      double denom = 0.0;
      for (std::size_t t = 0; t < m; ++t) denom += w[t] * probs[t][i];
      if (denom <= 0.0) continue;
      for (std::size_t t = 0; t < m; ++t) next[t] += c * w[t] * probs[t][i] / denom;
    }
    for (double& x : next) x /= data.n();
    w = std::move(next);
    // Keep the better of the new eta and the old one so the trace stays
    // monotone even when the line search lands slightly off.
    const double cand = maximize_eta(w);
    const double ll_old_eta = mixture_loglik(data, types, w, PrecisionParam(eta));
    const double ll_cand = mixture_loglik(data, types, w, PrecisionParam(cand));
    if (ll_cand >= ll_old_eta) eta = cand;
    const double next_ll = std::max(ll_cand, ll_old_eta);
    r.trace.push_back(next_ll);
    const bool done = next_ll - ll < options.tolerance;
    ll = next_ll;
    if (done) {
      r.model = "mixture";
      for (const auto& t : types) r.type_labels.push_back(t.label());
      r.weights = w;
      if (any_logit) r.eta = eta;
      r.iterations = it;
      r.set_loglik(ll, static_cast<int>(m) - 1 + (any_logit ? 1 : 0), data.n());
      return r;
    }
  }
  std::vector<double> last = w;
  last.push_back(eta);
  throw NonConvergenceError("mixture EM did not converge", std::move(last), r.trace);
}

// Joint fit of lambda and eta for a lambda-indexed payoff family: profile
// likelihood over lambda (grid then golden), eta maximized inside.
inline FitResult fit_lambda_precision(
    const std::function<std::vector<double>(double)>& payoffs_for, const ChoiceDataset& data,
    const GridSpec& grid = {}, double tol = kLambdaTolerance) {
  const auto neg = [&](double l) {
    return -fit_precision(data, TypeSpec::logit("nlk", payoffs_for(l))).objective;
  };
  const auto best = grid_then_golden(neg, grid, tol);
  FitResult r = fit_precision(data, TypeSpec::logit("nlk", payoffs_for(best.x)));
  r.model = "nlk-joint";
  r.lambda = best.x;
  r.set_loglik(r.objective, 2, data.n());
  return r;
}

}  // namespace nlk

#endif  // NLK_ESTIMATION_HPP
