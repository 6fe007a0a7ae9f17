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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nlk/io.hpp"
#include "nlk/reports.hpp"

namespace nlk::io {
namespace {

const std::string kData = NLK_DATA_DIR;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(GameJsonTest, ChickenFile) {
  const auto g = parse_game_file(kData + "/chicken.json");
  EXPECT_EQ(g.game.num_strategies(0), 2u);
  EXPECT_DOUBLE_EQ(g.game.payoff(0, 1, 0), 70.0);
  EXPECT_DOUBLE_EQ(g.naive[1][0], 0.5);
}

TEST(GameJsonTest, ExplicitNaive) {
  const auto g = parse_game_json(R"({"players": 2, "strategies": [["a","b"],["c"]],
      "payoffs": [[[1],[2]], [[3,4]]], "naive": [[0.25,0.75],[1]]})");
  EXPECT_DOUBLE_EQ(g.naive[0][1], 0.75);
  EXPECT_DOUBLE_EQ(g.game.payoff(1, 0, 1), 4.0);
}

TEST(GameJsonTest, Errors) {
  EXPECT_EQ(code_of([] { parse_game_json("{not json"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_game_json(R"({"players": 3, "strategies": [], "payoffs": []})"); }),
            ErrorCode::kUnsupported);
  EXPECT_EQ(code_of([] {
              parse_game_json(R"({"players": 2, "strategies": [["a"],["b"]],
                                  "payoffs": [[[1, 2]], [[1]]]})");
            }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] {
              parse_game_json(R"({"players": 2, "strategies": [["a"],["b"]],
                                  "payoffs": [[["x"]], [[1]]]})");
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_game_json(R"({"players": 2, "strategies": [["a"],["b"]]})"); }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_game_file(kData + "/does_not_exist.json"); }), ErrorCode::kIo);
}

TEST(CsvTest, ChoiceFixture) {
  const auto d = load_choice_csv(kData + "/arad_rubinstein.csv");
  EXPECT_EQ(d.size(), 10u);
  EXPECT_NEAR(d.n(), 108.0, 1e-9);
  EXPECT_EQ(d.labels()[6], "17");
}

TEST(CsvTest, CentipedeFixtures) {
  const auto ss = load_centipede_csv(kData + "/phv_ss.csv");
  EXPECT_EQ(ss.size(), 6u);
  EXPECT_EQ(ss.total_reached(), 687);
  EXPECT_DOUBLE_EQ(ss.at(2).stop_rate(), 0.17);
  const auto cc = load_centipede_csv(kData + "/phv_cc.csv");
  EXPECT_FALSE(cc.at(5).reported_rate.has_value());
  for (const char* f : {"phv_sc.csv", "phv_cs.csv", "lls_field.csv"})
    EXPECT_EQ(load_centipede_csv(kData + "/" + f).size(), 6u) << f;
}

TEST(CsvTest, CentipedeErrors) {
  EXPECT_EQ(code_of([] { parse_centipede_csv("node,reached,stopped\n1,5,6\n", "x"); }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] { parse_centipede_csv("node,reached,stopped\n2,5,1\n", "x"); }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_centipede_csv("node,reached,stopped\n1,5,1\n2,7,1\n", "x"); }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] { parse_centipede_csv("node,reached\n1,5\n", "x"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_centipede_csv("node,reached,stopped\n", "x"); }),
            ErrorCode::kEmptyData);
}

TEST(CsvTest, AuctionFixtureAndErrors) {
  const auto recs = load_auction_csv(kData + "/auction_synthetic.csv");
  EXPECT_EQ(recs.size(), 80u);
  int ex = 0;
  for (const auto& r : recs) ex += r.experienced;
  EXPECT_EQ(ex, 40);
  const std::string head = "subject,period,signal,bid,experienced\n";
  EXPECT_EQ(code_of([&] { parse_auction_csv(head + "a,1,5.0,3,0\n", "x"); }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { parse_auction_csv(head + "a,1,2.0,3,2\n", "x"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { parse_auction_csv(head + "a,1,2.0,nan,0\n", "x"); }),
            ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([&] { parse_auction_csv(head + "a,1,2.0\n", "x"); }), ErrorCode::kParse);
}

TEST(CsvTest, QuotedCellsAndComments) {
  const auto t = CsvTable::parse("# note\nname,value\n\"a,b\",\"say \"\"hi\"\"\"\n", "x");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.cell(0, 0), "a,b");
  EXPECT_EQ(t.cell(0, 1), "say \"hi\"");
  EXPECT_EQ(code_of([] { CsvTable::parse("a\n\"x\n", "x"); }), ErrorCode::kParse);
}

ReportTable sample() {
  return {"t, \"one\"", {"a", "b"}, {{"1", "x,y"}, {"2", ""}}, "note"};
}

TEST(ReportTest, JsonRoundTrip) {
  const std::vector<ReportTable> tables = {sample(), {"second", {"c"}, {{"3"}}, ""}};
  EXPECT_EQ(load_report_json(emit_report(tables, ReportFormat::kJson)), tables);
}

TEST(ReportTest, MarkdownAndCsv) {
  EXPECT_EQ(emit_report({sample()}, ReportFormat::kMarkdown),
            "### t, \"one\"\n\n| a | b |\n|---|---|\n| 1 | x,y |\n| 2 |  |\n\nnote\n");
  EXPECT_EQ(emit_report({sample()}, ReportFormat::kCsv),
            "# t, \"one\"\na,b\n1,\"x,y\"\n2,\n# note\n");
}

TEST(ReportTest, Validation) {
  ReportTable bad = sample();
  bad.rows.push_back({"only one"});
  EXPECT_EQ(code_of([&] { emit_report({bad}, ReportFormat::kCsv); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { load_report_json("[{\"title\": 1}]"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_format("xml"); }), ErrorCode::kInvalidArgument);
}

TEST(ReportTest, FixedFormatting) {
  EXPECT_EQ(fixed(0.12345, 3), "0.123");
  EXPECT_EQ(fixed(-0.0001, 3), "0.000");
  EXPECT_EQ(fixed(2.5, 0), "2");
  EXPECT_EQ(fixed(std::nan(""), 2), "");
}

std::vector<reports::NamedCentipedeData> bundled() {
  const std::vector<std::pair<std::string, std::string>> files = {
      {"S vs S", "phv_ss.csv"}, {"S vs C", "phv_sc.csv"}, {"C vs S", "phv_cs.csv"},
      {"C vs C", "phv_cc.csv"}, {"Field", "lls_field.csv"}};
  std::vector<reports::NamedCentipedeData> out;
  for (const auto& [name, file] : files)
    out.push_back({name, load_centipede_csv(kData + "/" + file)});
  return out;
}

TEST(ReportTest, DeterministicAcrossRuns) {
  const auto lambdas = reports::default_lambda_grid(0.6);
  const auto a = emit_report({reports::deviation_table(3, lambdas, 5, bundled())},
                             ReportFormat::kJson);
  const auto b = emit_report({reports::deviation_table(3, lambdas, 5, bundled())},
                             ReportFormat::kJson);
  EXPECT_EQ(a, b);
}

TEST(ReportTest, DeviationTableMatchesGolden) {
  const auto lambdas = reports::default_lambda_grid(0.6);
  const auto got = emit_report({reports::deviation_table(3, lambdas, 5, bundled())},
                               ReportFormat::kMarkdown);
  EXPECT_EQ(got, read_file(kData + "/golden/deviation.md"));
}

}  // namespace
}  // namespace nlk::io
