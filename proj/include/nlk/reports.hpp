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

// Builders for the comparison tables: requests, likelihoods, centipede
// predictions and deviations, and auction bid lines.

#ifndef NLK_REPORTS_HPP
#define NLK_REPORTS_HPP

#include <string>
#include <utility>
#include <vector>

#include "nlk/centipede.hpp"
#include "nlk/estimation.hpp"
#include "nlk/io.hpp"
#include "nlk/money_request.hpp"
#include "nlk/optimize.hpp"
#include "nlk/wallet_auction.hpp"

namespace nlk::reports {

using io::fixed;
using io::ReportTable;

struct NamedCentipedeData {
  std::string name;
  centipede::NodeObservations data;
};

inline std::vector<std::string> request_headers(const std::string& first) {
  std::vector<std::string> h{first};
  for (int a = money_request::kMinRequest; a <= money_request::kMaxRequest; ++a)
    h.push_back(std::to_string(a));
  return h;
}

inline std::vector<std::string> percent_row(const std::string& name, const MixedStrategy& p) {
  std::vector<std::string> row{name};
  for (double v : p.probs()) row.push_back(fixed(100.0 * v, 1));
  return row;
}

// NLK request distributions for a list of lambdas.
inline ReportTable request_table(const std::vector<double>& lambdas, double rho = 0.0) {
  ReportTable t;
  t.title = rho > 0.0 ? "11-20 game: naive share " + fixed(rho, 3) + " blended with NLK (%)"
                      : "11-20 game: NLK equilibrium strategy (%)";
  t.headers = request_headers("lambda");
  for (double l : lambdas) {
    const auto d = money_request::population_1120({rho, BeliefParam(l)});
    t.rows.push_back(percent_row(fixed(l, 4), d.strategy()));
  }
  return t;
}

inline ReportTable mse_table(const ChoiceDataset& data) {
  namespace mr = money_request;
  const auto nlk = [](double l) { return mr::nlk_1120(BeliefParam(l)).strategy(); };
  const auto uniform = MixedStrategy::uniform(mr::kNumActions);
  ReportTable t;
  t.title = "11-20 game: predictions and data by MSE";
  t.headers = request_headers("model");
  t.headers.push_back("MSE");
  const auto add = [&](const std::string& name, const MixedStrategy& p) {
    auto row = percent_row(name, p);
    row.push_back(fixed(mse_profile(p, data), 2));
    t.rows.push_back(std::move(row));
  };
  add("data", MixedStrategy::normalized(data.frequencies()));
  add("NE", nlk(0.0));
  for (int k = 1; k <= 3; ++k)
    add("level_" + std::to_string(k), mr::levelk_distribution(k).strategy());
  std::vector<MixedStrategy> levels;
  for (int k = 1; k <= 3; ++k) levels.push_back(mr::levelk_distribution(k).strategy());
  const auto simplex = fit_simplex_mse(levels, {"level_1", "level_2", "level_3"}, data);
  std::vector<double> mix(mr::kNumActions, 0.0);
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += simplex.weights[k] * levels[k][i];
  add("level_k k=1,2,3 (best weights)", MixedStrategy::normalized(mix));
  const auto fit = fit_lambda_mse(nlk, data);
  add("NLK lambda=" + fixed(*fit.lambda, 4), nlk(*fit.lambda));
  add("naive 0.70 + NLK lambda=0.70",
      mr::population_1120({0.7, BeliefParam(0.7)}).strategy());
  const auto joint = fit_lambda_rho_mse(nlk, uniform, data);
  add("naive " + fixed(*joint.rho, 3) + " + NLK lambda=" + fixed(*joint.lambda, 3),
      uniform.blend(nlk(*joint.lambda), *joint.rho));
  t.footnote = "Percent of requests; MSE over the ten actions in squared percentage points.";
  return t;
}

inline ReportTable loglik_table(const ChoiceDataset& data, double nlk_lambda = 0.85) {
  namespace mr = money_request;
  ReportTable t;
  t.title = "11-20 game: logit likelihoods";
  t.headers = {"model", "LL", "eta", "k", "BIC", "AIC"};
  const auto add = [&](const std::string& name, const FitResult& r) {
    t.rows.push_back({name, fixed(r.objective, 3), r.eta ? fixed(*r.eta, 3) : "",
                      std::to_string(r.k), fixed(r.bic, 3), fixed(r.aic, 3)});
  };
  std::vector<TypeSpec> levels;
  for (int k = 1; k <= 3; ++k) {
    levels.push_back(TypeSpec::logit("level_" + std::to_string(k), mr::levelk_payoffs(k)));
    add(levels.back().label(), fit_precision(data, levels.back()));
  }
  add("level_k k=1,2 mixture", fit_mixture(data, {levels[0], levels[1]}));
  add("level_k k=1,2,3 mixture", fit_mixture(data, levels));
  add("NE", fit_precision(data, TypeSpec::logit("NE", mr::nlk_payoffs(BeliefParam(0.0)))));
  // lambda counts as a free parameter alongside eta.
  auto nlk = fit_precision(data, TypeSpec::logit("NLK", mr::nlk_payoffs(BeliefParam(nlk_lambda))));
  nlk.set_loglik(nlk.objective, 2, data.n());
  add("NLK lambda=" + fixed(nlk_lambda, 2), nlk);
  t.footnote = "n = " + fixed(data.n(), 0) + "; BIC = k ln n - 2LL, AIC = 2k - 2LL.";
  return t;
}

inline std::vector<std::string> node_headers(const std::string& first, int stages) {
  std::vector<std::string> h{first};
  for (int s = 1; s <= stages; ++s) h.push_back("node " + std::to_string(s));
  return h;
}

inline std::vector<std::pair<std::string, centipede::StopProfile>> centipede_models(
    int rounds, const std::vector<double>& lambdas, int max_level) {
  // Solving is independent per lambda.
  auto solved = parallel_map(lambdas, [rounds](double l) {
    return centipede::solve_pbnlk(rounds, BeliefParam(l)).profile;
  });
  std::vector<std::pair<std::string, centipede::StopProfile>> out;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    out.emplace_back("NLK lambda=" + fixed(lambdas[i], 2), std::move(solved[i]));
  for (int k = 1; k <= max_level; ++k)
    out.emplace_back("level_" + std::to_string(k), centipede::levelk_stop_profile(k, rounds));
  return out;
}

inline ReportTable centipede_prediction_table(
    int rounds, const std::vector<double>& lambdas, int max_level,
    const std::vector<NamedCentipedeData>& data) {
  ReportTable t;
  t.title = "Centipede: stop probability upon reaching each node";
  t.headers = node_headers("model", 2 * rounds);
  for (const auto& [name, prof] : centipede_models(rounds, lambdas, max_level)) {
    std::vector<std::string> row{name};
    for (double s : prof.values()) row.push_back(fixed(s, 3));
    t.rows.push_back(std::move(row));
  }
  for (const auto& d : data) {
    std::vector<std::string> row{"data " + d.name};
    for (const auto& o : d.data.nodes())
      row.push_back(o.reached == 0 ? "-" : fixed(o.stop_rate(), 3) + " (" +
                                               std::to_string(o.reached) + ")");
    row.resize(t.headers.size(), "-");
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline ReportTable deviation_table(int rounds, const std::vector<double>& lambdas,
                                   int max_level,
                                   const std::vector<NamedCentipedeData>& data) {
  ReportTable t;
  t.title = "Centipede: reach-weighted deviation D between data and model";
  t.headers = {"model"};
  for (const auto& d : data) t.headers.push_back(d.name);
  for (const auto& [name, prof] : centipede_models(rounds, lambdas, max_level)) {
    std::vector<std::string> row{name};
    for (const auto& d : data) row.push_back(fixed(centipede::deviation_D(d.data, prof), 4));
    t.rows.push_back(std::move(row));
  }
  t.footnote = "Weights are reached counts; data rates as printed with the counts.";
  return t;
}

inline ReportTable bid_table(const std::vector<double>& lambdas,
                             const std::vector<wallet::AuctionRecord>* records = nullptr) {
  ReportTable t;
  t.title = "Wallet auction: bid functions";
  t.headers = {"model", "b(x)"};
  std::vector<wallet::AuctionRecord> in;
  std::vector<wallet::AuctionRecord> ex;
  if (records) {
    t.headers.push_back("MSE (inexperienced)");
    t.headers.push_back("MSE (experienced)");
    for (const auto& r : *records) (r.experienced ? ex : in).push_back(r);
  }
  const auto mse = [](const std::vector<wallet::AuctionRecord>& rs,
                      const wallet::BidFunction& f) -> std::string {
    if (rs.empty() || !f.point_valued()) return "";
    return fixed(wallet::mse_bids(rs, f), 3);
  };
  const auto add = [&](const std::string& name, const wallet::BidFunction& f) {
    std::vector<std::string> row{name, f.describe()};
    if (records) {
      row.push_back(mse(in, f));
      row.push_back(mse(ex, f));
    }
    t.rows.push_back(std::move(row));
  };
  for (double l : lambdas)
    add("BNLK lambda=" + fixed(l, 2), wallet::bnlk_bid_function(BeliefParam(l)));
  for (int k = 1; k <= 3; ++k) add("level_" + std::to_string(k), wallet::levelk_bid(k));
  return t;
}

inline std::vector<double> default_lambda_grid(double hi = 1.0) {
  return GridSpec{0.0, hi, 0.05}.points();
}

}  // namespace nlk::reports

#endif  // NLK_REPORTS_HPP
