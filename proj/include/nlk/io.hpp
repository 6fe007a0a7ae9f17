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

// File formats: JSON games, CSV datasets, and report tables rendered as
// markdown, CSV, or JSON.

#ifndef NLK_IO_HPP
#define NLK_IO_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "nlk/centipede.hpp"
#include "nlk/error.hpp"
#include "nlk/estimation.hpp"
#include "nlk/game.hpp"
#include "nlk/wallet_auction.hpp"

namespace nlk::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GameFile {
  NormalFormGame game;
  NaiveProfile naive;
};

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& where) {
  require(obj.is_object() && obj.contains(key), ErrorCode::kParse,
          where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

inline double number(const json& v, const std::string& where) {
  require(v.is_number(), ErrorCode::kParse, where + ": expected a number");
  const double x = v.get<double>();
  require(std::isfinite(x), ErrorCode::kNonFinite, where + ": value is not finite");
  return x;
}

}  // namespace detail

// {"players": 2, "strategies": [[...], [...]], "payoffs": [A, B],
//  "naive": optional [[...], [...]]}. payoffs[i][s_i][s_j] is player i's
// payoff, own strategy first.
inline GameFile parse_game_json(const std::string& text, const std::string& source = "game") {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
  const json& players = detail::field(doc, "players", source);
  require(players.is_number_integer() && players.get<int>() == 2, ErrorCode::kUnsupported,
          source + ": only two-player games are supported");
  const json& strategies = detail::field(doc, "strategies", source);
  const json& payoffs = detail::field(doc, "payoffs", source);
  require(strategies.is_array() && strategies.size() == 2, ErrorCode::kParse,
          source + ": \"strategies\" must hold two label arrays");
  require(payoffs.is_array() && payoffs.size() == 2, ErrorCode::kDimensionMismatch,
          source + ": \"payoffs\" must hold one matrix per player");
  std::array<std::vector<std::string>, 2> labels;
  for (std::size_t p = 0; p < 2; ++p) {
    const std::string where = source + ": strategies[" + std::to_string(p) + "]";
    require(strategies[p].is_array() && !strategies[p].empty(), ErrorCode::kParse,
            where + " must be a non-empty array");
    for (const auto& s : strategies[p]) {
      require(s.is_string(), ErrorCode::kParse, where + " labels must be strings");
      labels[p].push_back(s.get<std::string>());
    }
  }
  std::array<Eigen::MatrixXd, 2> mats;
  for (std::size_t p = 0; p < 2; ++p) {
    const auto rows = labels[p].size();
    const auto cols = labels[1 - p].size();
    const json& m = payoffs[p];
    const std::string who = source + ": player " + std::to_string(p);
    require(m.is_array() && m.size() == rows, ErrorCode::kDimensionMismatch,
            who + " payoff matrix needs " + std::to_string(rows) + " rows");
    mats[p].resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::string where = who + " row " + std::to_string(r);
      require(m[r].is_array() && m[r].size() == cols, ErrorCode::kDimensionMismatch,
              where + " needs " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c)
        mats[p](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            detail::number(m[r][c], where + " column " + std::to_string(c));
    }
  }
  NormalFormGame game(labels, mats);
  NaiveProfile naive = NaiveProfile::uniform(game);
  if (doc.contains("naive")) {
    const json& nv = doc.at("naive");
    require(nv.is_array() && nv.size() == 2, ErrorCode::kDimensionMismatch,
            source + ": \"naive\" must hold two probability arrays");
    std::array<std::vector<double>, 2> probs;
    for (std::size_t p = 0; p < 2; ++p) {
      const std::string where = source + ": naive[" + std::to_string(p) + "]";
      require(nv[p].is_array(), ErrorCode::kParse, where + " must be an array");
      for (const auto& x : nv[p]) probs[p].push_back(detail::number(x, where));
      require(probs[p].size() == labels[p].size(), ErrorCode::kDimensionMismatch,
              where + " length differs from strategy count");
    }
    naive = NaiveProfile(MixedStrategy(probs[0]), MixedStrategy(probs[1]));
  }
  return {std::move(game), std::move(naive)};
}

inline GameFile parse_game_file(const std::string& path) {
  return parse_game_json(read_file(path), path);
}

// Minimal CSV: comma separated, optional double quotes, header row first.
class CsvTable {
 public:
  static CsvTable parse(const std::string& text, const std::string& source) {
    CsvTable t;
    t.source_ = source;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (line.front() == '#') continue;
      auto cells = split(line, source, lineno);
      if (t.header_.empty()) {
        t.header_ = std::move(cells);
        continue;
      }
      require(cells.size() == t.header_.size(), ErrorCode::kParse,
              source + ":" + std::to_string(lineno) + ": expected " +
                  std::to_string(t.header_.size()) + " fields");
      t.rows_.push_back(std::move(cells));
      t.lines_.push_back(lineno);
    }
    require(!t.header_.empty(), ErrorCode::kEmptyData, source + ": empty file");
    return t;
  }

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t size() const noexcept { return rows_.size(); }

  std::optional<std::size_t> column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
      if (header_[i] == name) return i;
    return std::nullopt;
  }
  std::size_t require_column(const std::string& name) const {
    auto c = column(name);
    require(c.has_value(), ErrorCode::kParse, source_ + ": missing column \"" + name + "\"");
    return *c;
  }

  const std::string& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  std::string where(std::size_t row) const {
    return source_ + ":" + std::to_string(lines_[row]);
  }
  double number(std::size_t row, std::size_t col) const {
    const std::string& s = rows_[row][col];
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && !s.empty(), ErrorCode::kParse,
            where(row) + ": \"" + s + "\" is not a number");
    require(std::isfinite(v), ErrorCode::kNonFinite, where(row) + ": value not finite");
    return v;
  }
  long integer(std::size_t row, std::size_t col) const {
    const double v = number(row, col);
    require(v == std::floor(v), ErrorCode::kParse,
            where(row) + ": \"" + rows_[row][col] + "\" is not an integer");
    return static_cast<long>(v);
  }

 private:
  static std::vector<std::string> split(const std::string& line, const std::string& source,
                                        int lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        out.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    require(!quoted, ErrorCode::kParse,
            source + ":" + std::to_string(lineno) + ": unterminated quote");
    out.push_back(trim(cur));
    return out;
  }
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
  }

  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<int> lines_;
};

// action,count
inline ChoiceDataset parse_choice_csv(const std::string& text, const std::string& source) {
  const auto t = CsvTable::parse(text, source);
  const auto ca = t.require_column("action");
  const auto cc = t.require_column("count");
  require(t.size() > 0, ErrorCode::kEmptyData, source + ": no data rows");
  std::vector<std::string> labels;
  std::vector<double> counts;
  for (std::size_t r = 0; r < t.size(); ++r) {
    labels.push_back(t.cell(r, ca));
    counts.push_back(t.number(r, cc));
    require(counts.back() >= 0.0, ErrorCode::kOutOfRange, t.where(r) + ": negative count");
  }
  return ChoiceDataset(std::move(labels), std::move(counts));
}

// node,reached,stopped[,rate]; nodes 1..S in order.
inline centipede::NodeObservations parse_centipede_csv(const std::string& text,
                                                       const std::string& source) {
  const auto t = CsvTable::parse(text, source);
  const auto cn = t.require_column("node");
  const auto cr = t.require_column("reached");
  const auto cs = t.require_column("stopped");
  const auto crate = t.column("rate");
  require(t.size() > 0, ErrorCode::kEmptyData, source + ": no data rows");
  std::vector<centipede::NodeObservation> nodes;
  for (std::size_t r = 0; r < t.size(); ++r) {
    require(t.integer(r, cn) == static_cast<long>(r) + 1, ErrorCode::kParse,
            t.where(r) + ": nodes must be numbered 1, 2, ... in order");
    centipede::NodeObservation o;
    o.reached = t.integer(r, cr);
    o.stopped = t.integer(r, cs);
    require(o.reached >= 0 && o.stopped >= 0, ErrorCode::kOutOfRange,
            t.where(r) + ": negative count");
    require(o.stopped <= o.reached, ErrorCode::kOutOfRange,
            t.where(r) + ": stopped exceeds reached");
    if (!nodes.empty())
      require(o.reached <= nodes.back().reached, ErrorCode::kOutOfRange,
              t.where(r) + ": reached count increases along the game");
    if (crate && !t.cell(r, *crate).empty()) o.reported_rate = t.number(r, *crate);
    nodes.push_back(o);
  }
  return centipede::NodeObservations(std::move(nodes));
}

// subject,period,signal,bid,experienced
inline std::vector<wallet::AuctionRecord> parse_auction_csv(const std::string& text,
                                                            const std::string& source) {
  const auto t = CsvTable::parse(text, source);
  const auto cs = t.require_column("subject");
  const auto cp = t.require_column("period");
  const auto cx = t.require_column("signal");
  const auto cb = t.require_column("bid");
  const auto ce = t.require_column("experienced");
  require(t.size() > 0, ErrorCode::kEmptyData, source + ": no data rows");
  std::vector<wallet::AuctionRecord> out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    wallet::AuctionRecord rec;
    rec.subject = t.cell(r, cs);
    rec.period = static_cast<int>(t.integer(r, cp));
    rec.signal = t.number(r, cx);
    rec.bid = t.number(r, cb);
    const long e = t.integer(r, ce);
    require(e == 0 || e == 1, ErrorCode::kParse, t.where(r) + ": experienced must be 0 or 1");
    rec.experienced = e == 1;
    try {
      rec.validate();
    } catch (const Error& err) {
      throw Error(err.code(), t.where(r) + ": " + err.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline ChoiceDataset load_choice_csv(const std::string& path) {
  return parse_choice_csv(read_file(path), path);
}
inline centipede::NodeObservations load_centipede_csv(const std::string& path) {
  return parse_centipede_csv(read_file(path), path);
}
inline std::vector<wallet::AuctionRecord> load_auction_csv(const std::string& path) {
  return parse_auction_csv(read_file(path), path);
}

struct ReportTable {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
  std::string footnote;

  void validate() const {
    for (std::size_t r = 0; r < rows.size(); ++r)
      require(rows[r].size() == headers.size(), ErrorCode::kDimensionMismatch,
              "table \"" + title + "\" row " + std::to_string(r) + " has " +
                  std::to_string(rows[r].size()) + " cells, expected " +
                  std::to_string(headers.size()));
  }
  bool operator==(const ReportTable&) const = default;
};

inline std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s[0] == '-' ? 1 : 0);
  return s;
}

enum class ReportFormat { kMarkdown, kCsv, kJson };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  throw Error(ErrorCode::kInvalidArgument, "unknown format \"" + s + "\"");
}

namespace detail {

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  return out + "\n";
}

inline std::string md_line(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

}  // namespace detail

inline json to_json(const ReportTable& t) {
  return json{{"title", t.title}, {"headers", t.headers}, {"rows", t.rows},
              {"footnote", t.footnote}};
}

inline std::string emit_report(const std::vector<ReportTable>& tables, ReportFormat format) {
  for (const auto& t : tables) t.validate();
  std::string out;
  switch (format) {
    case ReportFormat::kMarkdown:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto& t = tables[i];
        if (i) out += "\n";
        out += "### " + t.title + "\n\n";
        out += detail::md_line(t.headers);
        out += "|";
        for (std::size_t c = 0; c < t.headers.size(); ++c) out += "---|";
        out += "\n";
        for (const auto& r : t.rows) out += detail::md_line(r);
        if (!t.footnote.empty()) out += "\n" + t.footnote + "\n";
      }
      break;
    case ReportFormat::kCsv:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto& t = tables[i];
        if (i) out += "\n";
        out += "# " + t.title + "\n";
        out += detail::csv_line(t.headers);
        for (const auto& r : t.rows) out += detail::csv_line(r);
        if (!t.footnote.empty()) out += "# " + t.footnote + "\n";
      }
      break;
    case ReportFormat::kJson: {
      json arr = json::array();
      for (const auto& t : tables) arr.push_back(to_json(t));
      out = arr.dump(2) + "\n";
      break;
    }
  }
  return out;
}

inline std::vector<ReportTable> load_report_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("report: ") + e.what());
  }
  require(doc.is_array(), ErrorCode::kParse, "report: expected an array of tables");
  std::vector<ReportTable> out;
  try {
    for (const auto& t : doc) {
      ReportTable r;
      r.title = t.at("title").get<std::string>();
      r.headers = t.at("headers").get<std::vector<std::string>>();
      r.rows = t.at("rows").get<std::vector<std::vector<std::string>>>();
      r.footnote = t.value("footnote", std::string{});
      r.validate();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report: ") + e.what());
  }
  return out;
}

}  // namespace nlk::io

#endif  // NLK_IO_HPP
