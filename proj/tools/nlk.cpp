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

// Command-line front end.
//
// Exit codes: 0 success, 1 invalid input, 2 solver non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlk.hpp"

#ifndef NLK_DATA_DIR
#define NLK_DATA_DIR "data"
#endif

namespace {

using nlk::BeliefParam;
using nlk::io::fixed;
using json = nlohmann::json;

constexpr int kExitInvalid = 1;
constexpr int kExitNonConvergence = 2;

nlk::GridSpec parse_grid(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      nlk::require(used == item.size(), nlk::ErrorCode::kInvalidArgument, "");
    } catch (const std::exception&) {
      throw nlk::Error(nlk::ErrorCode::kInvalidArgument, "bad grid \"" + s + "\"");
    }
  }
  nlk::require(parts.size() == 3, nlk::ErrorCode::kInvalidArgument,
               "grid must be lo:hi:step, got \"" + s + "\"");
  nlk::GridSpec g{parts[0], parts[1], parts[2]};
  g.validate();
  return g;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  nlk::require(static_cast<bool>(out), nlk::ErrorCode::kIo, "cannot write " + path);
  out << text;
}

std::string render(const std::vector<nlk::io::ReportTable>& tables, const std::string& format) {
  return nlk::io::emit_report(tables, nlk::io::parse_format(format));
}

json strategy_json(const nlk::MixedStrategy& s) { return json(s.vector()); }

struct Common {
  std::string format = "markdown";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "markdown, csv, or json")
      ->check(CLI::IsMember({"markdown", "md", "csv", "json"}));
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

std::vector<nlk::reports::NamedCentipedeData> bundled_centipede(const std::string& dir) {
  const std::vector<std::pair<std::string, std::string>> files = {
      {"S vs S", "phv_ss.csv"}, {"S vs C", "phv_sc.csv"}, {"C vs S", "phv_cs.csv"},
      {"C vs C", "phv_cc.csv"}, {"Field", "lls_field.csv"}};
  std::vector<nlk::reports::NamedCentipedeData> out;
  for (const auto& [name, file] : files)
    out.push_back({name, nlk::io::load_centipede_csv(dir + "/" + file)});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NLK equilibrium solver and estimation toolkit"};
  app.require_subcommand(1);

  // solve
  Common solve_c;
  std::string game_path;
  double lambda = 0.0;
  std::string method = "enumerate";
  auto* solve = app.add_subcommand("solve", "lambda-NLK equilibria of a game file");
  solve->add_option("--game", game_path, "game JSON")->required();
  solve->add_option("--lambda", lambda, "belief that the opponent is naive")->required();
  solve->add_option("--method", method)->check(CLI::IsMember({"enumerate", "iterate"}));
  solve->add_option("--out", solve_c.out);

  // solve-1120
  Common r1120_c;
  double rho = 0.0;
  auto* s1120 = app.add_subcommand("solve-1120", "NLK strategy of the 11-20 game");
  s1120->add_option("--lambda", lambda)->required();
  s1120->add_option("--rho", rho, "objective share of naive players");
  r1120_c.format = "csv";
  add_common(s1120, r1120_c);

  // solve-centipede
  Common cent_c;
  int nodes = 6;
  auto* scent = app.add_subcommand("solve-centipede", "PBNLK assessment of the centipede game");
  scent->add_option("--nodes", nodes, "even number of decision nodes");
  scent->add_option("--lambda", lambda)->required();
  cent_c.format = "csv";
  add_common(scent, cent_c);

  // fit-centipede
  Common fcent_c;
  std::string data_path;
  std::string grid_text = "0:1:0.05";
  auto* fcent = app.add_subcommand("fit-centipede", "deviation D over a lambda grid");
  fcent->add_option("--data", data_path, "node,reached,stopped[,rate] CSV")->required();
  fcent->add_option("--grid", grid_text, "lo:hi:step");
  fcent_c.format = "csv";
  add_common(fcent, fcent_c);

  // solve-auction
  Common sauc_c;
  auto* sauc = app.add_subcommand("solve-auction", "linear BNLK bid of the wallet auction");
  sauc->add_option("--lambda", lambda)->required();
  add_common(sauc, sauc_c);

  // fit-auction
  Common fauc_c;
  std::string experience = "ex";
  auto* fauc = app.add_subcommand("fit-auction", "bid MSE over a lambda grid");
  fauc->add_option("--data", data_path, "subject,period,signal,bid,experienced CSV")
      ->required();
  fauc->add_option("--experience", experience)->check(CLI::IsMember({"in", "ex"}));
  fauc->add_option("--grid", grid_text, "lo:hi:step");
  fauc_c.format = "csv";
  add_common(fauc, fauc_c);

  // beauty
  Common beauty_c;
  bool integer = false;
  int step = 1;
  int check = -1;
  auto* beauty = app.add_subcommand("beauty", "three-player 7/10-of-mean guessing game");
  beauty->add_option("--lambda", lambda)->required();
  beauty->add_flag("--integer", integer, "use the integer grid 0..100");
  beauty->add_option("--step", step, "integer grid step");
  beauty->add_option("--check", check, "guess to verify as a symmetric pure profile");
  add_common(beauty, beauty_c);

  // fit mse | logit
  auto* fit = app.add_subcommand("fit", "fit models to 11-20 choice data");
  fit->require_subcommand(1);
  Common fmse_c;
  std::string game_name = "1120";
  std::string family = "nlk";
  auto* fmse = fit->add_subcommand("mse", "least-squares fit on percentages");
  fmse->add_option("--game", game_name)->check(CLI::IsMember({"1120"}));
  fmse->add_option("--data", data_path, "action,count CSV")->required();
  fmse->add_option("--family", family)->check(CLI::IsMember({"nlk", "nlk-rho", "levelk"}));
  fmse->add_option("--grid", grid_text, "lambda grid lo:hi:step");
  fmse_c.format = "json";
  add_common(fmse, fmse_c);
  Common flogit_c;
  std::string types_text = "level1";
  bool mixture = false;
  auto* flogit = fit->add_subcommand("logit", "logit maximum likelihood");
  flogit->add_option("--game", game_name)->check(CLI::IsMember({"1120"}));
  flogit->add_option("--data", data_path, "action,count CSV")->required();
  flogit->add_option("--types", types_text,
                     "comma list: level<k>, ne, nlk:<lambda>, nlk (joint lambda), uniform");
  flogit->add_flag("--mixture", mixture, "fit one mixture over all listed types");
  flogit_c.format = "json";
  add_common(flogit, flogit_c);

  // report
  Common report_c;
  std::string table = "all";
  std::string data_dir = NLK_DATA_DIR;
  auto* report = app.add_subcommand("report", "regenerate comparison tables");
  report->add_option("--table", table)
      ->check(CLI::IsMember({"requests", "mse", "loglik", "centipede", "deviation", "bids", "all"}));
  report->add_option("--data-dir", data_dir, "directory with the bundled fixtures");
  add_common(report, report_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*solve) {
      const auto file = nlk::io::parse_game_file(game_path);
      nlk::SolverOptions opts;
      if (method == "iterate") opts.method = nlk::SolverMethod::kDampedIteration;
      const auto eqs = nlk::solve_nlk(file.game, BeliefParam(lambda), file.naive, opts);
      const auto chosen = nlk::select_equilibrium(eqs);
      json out{{"lambda", lambda}, {"equilibria", json::array()}};
      for (std::size_t e = 0; e < eqs.size(); ++e)
        out["equilibria"].push_back({{"profile", {strategy_json(eqs[e].profile[0]),
                                                  strategy_json(eqs[e].profile[1])}},
                                     {"epsilon", eqs[e].epsilon},
                                     {"symmetric", eqs[e].symmetric()},
                                     {"selected", e == chosen}});
      out["selection"] =
          "symmetric equilibrium with the largest support, else the first found";
      write_output(out.dump(2) + "\n", solve_c.out);
    } else if (*s1120) {
      namespace mr = nlk::money_request;
      const auto d = mr::population_1120({rho, BeliefParam(lambda)});
      if (r1120_c.format == "csv") {
        std::string text = "action,probability\n";
        for (int a = mr::kMinRequest; a <= mr::kMaxRequest; ++a) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%d,%.12g\n", a, d.at(a));
          text += buf;
        }
        write_output(text, r1120_c.out);
      } else {
        write_output(render({nlk::reports::request_table({lambda}, rho)}, r1120_c.format),
                     r1120_c.out);
      }
    } else if (*scent) {
      nlk::require(nodes >= 2 && nodes % 2 == 0, nlk::ErrorCode::kInvalidArgument,
                   "--nodes must be even and >= 2");
      const auto a = nlk::centipede::solve_pbnlk(nodes / 2, BeliefParam(lambda));
      nlk::io::ReportTable t;
      t.title = "PBNLK assessment, lambda=" + fixed(lambda, 4);
      t.headers = {"node", "mover", "stop", "belief_naive"};
      for (int s = 1; s <= nodes; ++s)
        t.rows.push_back({std::to_string(s), s % 2 ? "A" : "B", fixed(a.profile.at(s), 6),
                          fixed(a.beliefs.at(s), 6)});
      t.footnote = "max regret " + fixed(a.max_regret, 12) + ", max consistency residual " +
                   fixed(a.max_consistency_residual, 12);
      if (cent_c.format == "csv") {
        std::string text = "node,stop,belief\n";
        for (const auto& r : t.rows) text += r[0] + "," + r[2] + "," + r[3] + "\n";
        write_output(text, cent_c.out);
      } else {
        write_output(render({t}, cent_c.format), cent_c.out);
      }
    } else if (*fcent) {
      const auto data = nlk::io::load_centipede_csv(data_path);
      nlk::require(data.size() % 2 == 0, nlk::ErrorCode::kInvalidArgument,
                   "data must cover an even number of nodes");
      const auto grid = parse_grid(grid_text).points();
      const auto ds = nlk::parallel_map(grid, [&](double l) {
        return nlk::centipede::deviation_D(
            data,
            nlk::centipede::solve_pbnlk(static_cast<int>(data.size()) / 2, BeliefParam(l))
                .profile);
      });
      nlk::io::ReportTable t;
      t.title = "Deviation D by lambda: " + data_path;
      t.headers = {"lambda", "D"};
      for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({fixed(grid[i], 4), fixed(ds[i], 4)});
      write_output(render({t}, fcent_c.format), fcent_c.out);
    } else if (*sauc) {
      const auto b = nlk::wallet::bnlk_bid(BeliefParam(lambda));
      nlk::io::ReportTable t;
      t.title = "BNLK bid, lambda=" + fixed(lambda, 4);
      t.headers = {"intercept", "slope", "spread", "q"};
      t.rows.push_back({fixed(b.intercept, 6), fixed(b.slope, 6),
                        fixed(nlk::wallet::bnlk_spread(BeliefParam(lambda)), 6),
                        fixed(nlk::wallet::bnlk_q(BeliefParam(lambda)), 6)});
      write_output(render({t}, sauc_c.format), sauc_c.out);
    } else if (*fauc) {
      auto records = nlk::io::load_auction_csv(data_path);
      std::erase_if(records, [&](const nlk::wallet::AuctionRecord& r) {
        return r.experienced != (experience == "ex");
      });
      nlk::require(!records.empty(), nlk::ErrorCode::kEmptyData,
                   "no records with the requested experience flag");
      const auto grid = parse_grid(grid_text);
      const auto mse = [&](double l) {
        return nlk::wallet::mse_bids(records, nlk::wallet::bnlk_bid_function(BeliefParam(l)));
      };
      nlk::io::ReportTable t;
      t.title = "Bid MSE by lambda (" + experience + "): " + data_path;
      t.headers = {"lambda", "MSE"};
      for (double l : grid.points()) t.rows.push_back({fixed(l, 4), fixed(mse(l), 4)});
      const auto best = nlk::grid_then_golden(mse, grid, nlk::kLambdaTolerance);
      t.footnote = "best lambda " + fixed(best.x, 4) + ", MSE " + fixed(best.fx, 4);
      write_output(render({t}, fauc_c.format), fauc_c.out);
    } else if (*beauty) {
      nlk::io::ReportTable t;
      if (integer || check >= 0) {
        nlk::require(check >= 0, nlk::ErrorCode::kInvalidArgument,
                     "--integer needs --check <guess>");
        const auto r = nlk::beauty::verify_integer_pure(check, BeliefParam(lambda), step);
        t.title = "Integer check, lambda=" + fixed(lambda, 4) + ", step " + std::to_string(step);
        t.headers = {"guess", "equilibrium", "payoff", "best_deviation", "gain"};
        t.rows.push_back({std::to_string(check), r.is_equilibrium ? "yes" : "no",
                          fixed(r.payoff, 6), std::to_string(r.best_deviation),
                          fixed(r.gain, 6)});
      } else {
        const double g = nlk::beauty::nlk_guess(BeliefParam(lambda));
        t.title = "Continuum NLK guess, lambda=" + fixed(lambda, 4);
        t.headers = {"guess", "win_probability_vs_naive"};
        t.rows.push_back({fixed(g, 6), fixed(nlk::beauty::win_probability(g), 6)});
      }
      write_output(render({t}, beauty_c.format), beauty_c.out);
    } else if (*fit) {
      namespace mr = nlk::money_request;
      const auto data = nlk::io::load_choice_csv(data_path);
      nlk::require(data.size() == mr::kNumActions, nlk::ErrorCode::kDimensionMismatch,
                   "11-20 data needs ten actions");
      std::vector<nlk::FitResult> fits;
      Common* c = nullptr;
      if (*fmse) {
        c = &fmse_c;
        const auto grid = parse_grid(grid_text);
        const auto fam = [](double l) { return mr::nlk_1120(BeliefParam(l)).strategy(); };
        if (family == "nlk") {
          fits.push_back(nlk::fit_lambda_mse(fam, data, grid));
        } else if (family == "nlk-rho") {
          fits.push_back(nlk::fit_lambda_rho_mse(
              fam, nlk::MixedStrategy::uniform(mr::kNumActions), data, grid));
        } else {
          std::vector<nlk::MixedStrategy> levels;
          for (int k = 1; k <= 3; ++k) levels.push_back(mr::levelk_distribution(k).strategy());
          fits.push_back(nlk::fit_simplex_mse(levels, {"level1", "level2", "level3"}, data));
        }
      } else {
        c = &flogit_c;
        std::vector<nlk::TypeSpec> types;
        std::stringstream ss(types_text);
        std::string item;
        bool joint = false;
        while (std::getline(ss, item, ',')) {
          if (item.rfind("level", 0) == 0) {
            const int k = std::stoi(item.substr(5));
            types.push_back(nlk::TypeSpec::logit(item, mr::levelk_payoffs(k)));
          } else if (item == "ne") {
            types.push_back(nlk::TypeSpec::logit(item, mr::nlk_payoffs(BeliefParam(0.0))));
          } else if (item.rfind("nlk:", 0) == 0) {
            const double l = std::stod(item.substr(4));
            types.push_back(nlk::TypeSpec::logit(item, mr::nlk_payoffs(BeliefParam(l))));
          } else if (item == "nlk") {
            joint = true;
          } else if (item == "uniform") {
            types.push_back(
                nlk::TypeSpec::fixed(item, nlk::MixedStrategy::uniform(mr::kNumActions)));
          } else {
            throw nlk::Error(nlk::ErrorCode::kInvalidArgument, "unknown type \"" + item + "\"");
          }
        }
        if (joint)
          fits.push_back(nlk::fit_lambda_precision(
              [](double l) { return mr::nlk_payoffs(BeliefParam(l)); }, data,
              parse_grid(grid_text)));
        if (mixture) {
          fits.push_back(nlk::fit_mixture(data, types));
        } else {
          for (const auto& t : types) {
            auto r = nlk::fit_precision(data, t);
            // A fixed lambda still counts as chosen.
            if (t.label().rfind("nlk:", 0) == 0) r.set_loglik(r.objective, 2, data.n());
            fits.push_back(std::move(r));
          }
        }
      }
      if (c->format == "json") {
        json arr = json::array();
        for (const auto& f : fits) {
          json j{{"model", f.model},
                 {"objective", f.objective_kind == nlk::Objective::kMse ? "mse" : "loglik"},
                 {"value", f.objective},
                 {"k", f.k},
                 {"n", f.n}};
          if (f.lambda) j["lambda"] = *f.lambda;
          if (f.rho) j["rho"] = *f.rho;
          if (f.eta) j["eta"] = *f.eta;
          if (!f.weights.empty()) {
            j["types"] = f.type_labels;
            j["weights"] = f.weights;
          }
          if (f.objective_kind == nlk::Objective::kLogLikelihood) {
            j["bic"] = f.bic;
            j["aic"] = f.aic;
          }
          arr.push_back(j);
        }
        write_output(arr.dump(2) + "\n", c->out);
      } else {
        nlk::io::ReportTable t;
        t.title = "Fit results: " + data_path;
        t.headers = {"model", "objective", "lambda", "rho", "eta", "weights", "k", "BIC", "AIC"};
        for (const auto& f : fits) {
          std::string w;
          for (std::size_t i = 0; i < f.weights.size(); ++i)
            w += (i ? " " : "") + fixed(f.weights[i], 4);
          const bool ll = f.objective_kind == nlk::Objective::kLogLikelihood;
          t.rows.push_back({f.model, fixed(f.objective, 4),
                            f.lambda ? fixed(*f.lambda, 4) : "", f.rho ? fixed(*f.rho, 4) : "",
                            f.eta ? fixed(*f.eta, 4) : "", w, std::to_string(f.k),
                            ll ? fixed(f.bic, 3) : "", ll ? fixed(f.aic, 3) : ""});
        }
        write_output(render({t}, c->format), c->out);
      }
    } else if (*report) {
      namespace rp = nlk::reports;
      std::vector<nlk::io::ReportTable> tables;
      const bool all = table == "all";
      const auto choice = [&] { return nlk::io::load_choice_csv(data_dir + "/arad_rubinstein.csv"); };
      if (all || table == "requests")
        tables.push_back(rp::request_table({0.0, 0.25, 0.5, 0.6585, 0.7, 0.85, 0.95}));
      if (all || table == "mse") tables.push_back(rp::mse_table(choice()));
      if (all || table == "loglik") tables.push_back(rp::loglik_table(choice()));
      const auto lambdas = rp::default_lambda_grid(0.6);
      if (all || table == "centipede")
        tables.push_back(
            rp::centipede_prediction_table(3, lambdas, 5, bundled_centipede(data_dir)));
      if (all || table == "deviation")
        tables.push_back(rp::deviation_table(3, lambdas, 5, bundled_centipede(data_dir)));
      if (all || table == "bids") tables.push_back(rp::bid_table(rp::default_lambda_grid()));
      write_output(render(tables, report_c.format), report_c.out);
    }
  } catch (const nlk::NonConvergenceError& e) {
    std::cerr << "error [" << nlk::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const nlk::Error& e) {
    std::cerr << "error [" << nlk::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
