#include "warmstart/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "warmstart/config.hpp"
#include "warmstart/errors.hpp"

namespace warmstart {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T v{};
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw CorruptFileError(std::string("bad ") + what + " '" + text + "'");
  return v;
}

double parse_real(const std::string& text, const char* what) {
  if (text.empty()) throw CorruptFileError(std::string("empty ") + what);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) throw CorruptFileError(std::string("bad ") + what + " '" + text + "'");
  return v;
}

char parse_side(const std::string& text, const char* what, bool allow_draw) {
  if (text == "A" || text == "B" || (allow_draw && text == "D")) return text[0];
  throw CorruptFileError(std::string("bad ") + what + " '" + text + "'");
}

std::string join_moves(const std::vector<Move>& moves) {
  std::string out;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(moves[i]);
  }
  return out;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

void require_header(const CsvTable& table, const std::vector<std::string>& header, const char* what) {
  if (table.header != header) throw CorruptFileError(std::string(what) + ": unexpected header");
}

std::string short_name(GameKind kind) {
  switch (kind) {
    case GameKind::Gobang: return "gobang";
    case GameKind::ConnectFour: return "connect4";
    case GameKind::Othello: return "othello";
  }
  return "?";
}

const std::array<std::string, 4> kShortAgent = {"rand", "mcts", "rave", "rhea"};

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw CorruptFileError("missing column '" + name + "'");
}

std::string csv_line(const std::vector<std::string>& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].find_first_of(",\n\r") != std::string::npos)
      throw std::invalid_argument("CSV field contains a separator: '" + row[i] + "'");
    if (i) out += ',';
    out += row[i];
  }
  out += '\n';
  return out;
}

std::string to_csv_text(const CsvTable& table) {
  std::string out = csv_line(table.header);
  for (const auto& row : table.rows) out += csv_line(row);
  return out;
}

CsvTable parse_csv_text(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    if (fields.size() != table.header.size())
      throw CorruptFileError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(table.header.size()) + " fields, got " + std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
  }
  if (first) throw CorruptFileError("empty CSV file");
  return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_csv_text(table);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFileError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return parse_csv_text(os.str());
  } catch (const CorruptFileError& e) {
    throw CorruptFileError(path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& report_header() {
  static const std::vector<std::string> h = {"i",      "examples", "mean_loss", "arena_w",
                                             "arena_d", "arena_l",  "accepted",  "epoch_losses"};
  return h;
}

std::vector<std::string> report_row(const IterationReport& r) {
  return {std::to_string(r.iteration),  std::to_string(r.examples),     format_double(r.mean_loss),
          std::to_string(r.arena_wins), std::to_string(r.arena_draws), std::to_string(r.arena_losses),
          r.accepted ? "1" : "0",       join_reals(r.losses)};
}

CsvTable reports_table(std::span<const IterationReport> reports) {
  CsvTable t{report_header(), {}};
  for (const auto& r : reports) t.rows.push_back(report_row(r));
  return t;
}

std::vector<IterationReport> parse_reports(const CsvTable& table) {
  require_header(table, report_header(), "reports.csv");
  std::vector<IterationReport> out;
  for (const auto& row : table.rows) {
    IterationReport r;
    r.iteration = parse_number<int>(row[0], "iteration");
    r.examples = parse_number<std::size_t>(row[1], "example count");
    r.mean_loss = parse_real(row[2], "mean_loss");
    r.arena_wins = parse_number<int>(row[3], "arena_w");
    r.arena_draws = parse_number<int>(row[4], "arena_d");
    r.arena_losses = parse_number<int>(row[5], "arena_l");
    if (row[6] != "0" && row[6] != "1") throw CorruptFileError("bad accepted flag '" + row[6] + "'");
    r.accepted = row[6] == "1";
    if (!row[7].empty())
      for (const auto& v : split(row[7], ' ')) r.losses.push_back(parse_real(v, "epoch loss"));
    out.push_back(std::move(r));
  }
  return out;
}

CsvTable records_table(std::span<const MatchRecord> records) {
  CsvTable t{{"agentA", "agentB", "game_index", "first_mover", "result", "moves", "seed"}, {}};
  for (const auto& rec : records)
    for (const auto& g : rec.game_log)
      t.rows.push_back({g.agent_a, g.agent_b, std::to_string(g.game_index), std::string(1, g.first_mover),
                        std::string(1, g.result), join_moves(g.moves), std::to_string(g.seed)});
  return t;
}

std::vector<MatchRecord> parse_records(const CsvTable& table) {
  require_header(table, {"agentA", "agentB", "game_index", "first_mover", "result", "moves", "seed"},
                 "records.csv");
  std::vector<MatchRecord> out;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (const auto& row : table.rows) {
    GameRecord g;
    g.agent_a = row[0];
    g.agent_b = row[1];
    if (g.agent_a.empty() || g.agent_b.empty()) throw CorruptFileError("records.csv: empty agent name");
    g.game_index = parse_number<int>(row[2], "game_index");
    g.first_mover = parse_side(row[3], "first_mover", false);
    g.result = parse_side(row[4], "result", true);
    if (!row[5].empty())
      for (const auto& m : split(row[5], ' ')) g.moves.push_back(parse_number<int>(m, "move"));
    g.seed = parse_number<std::uint64_t>(row[6], "seed");
    const auto key = std::make_pair(g.agent_a, g.agent_b);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, out.size()).first;
      MatchRecord rec;
      rec.agent_a = g.agent_a;
      rec.agent_b = g.agent_b;
      out.push_back(std::move(rec));
    }
    out[it->second].add(g);
  }
  return out;
}

CsvTable elo_table(const EloTable& elo) {
  CsvTable t{{"agent", "rating", "games"}, {}};
  for (std::size_t i = 0; i < elo.agents.size(); ++i)
    t.rows.push_back({elo.agents[i], format_double(elo.ratings[i]), std::to_string(elo.games[i])});
  return t;
}

EloTable parse_elo(const CsvTable& table) {
  require_header(table, {"agent", "rating", "games"}, "elo.csv");
  EloTable elo;
  for (const auto& row : table.rows) {
    elo.agents.push_back(row[0]);
    elo.ratings.push_back(parse_real(row[1], "rating"));
    elo.games.push_back(parse_number<int>(row[2], "games"));
  }
  return elo;
}

CsvTable orientation_csv(const OrientationTable& table) {
  CsvTable t;
  t.header.push_back("adv");
  for (GameKind g : kOrientationGames)
    for (const auto& a : kShortAgent) t.header.push_back(short_name(g) + "_" + a);
  for (int row = 0; row < 4; ++row) {
    std::vector<std::string> r{kOrientationAgents[row]};
    for (int g = 0; g < 3; ++g)
      for (int col = 0; col < 4; ++col) r.push_back(row == col ? "" : format_double(table.rate[g][row][col]));
    t.rows.push_back(std::move(r));
  }
  return t;
}

OrientationTable parse_orientation(const CsvTable& table) {
  const CsvTable expected_shape = orientation_csv(OrientationTable{});
  require_header(table, expected_shape.header, "orientation CSV");
  if (table.rows.size() != 4) throw CorruptFileError("orientation CSV: expected 4 rows");
  OrientationTable out;
  for (int row = 0; row < 4; ++row) {
    if (table.rows[row][0] != kOrientationAgents[row])
      throw CorruptFileError("orientation CSV: unexpected row '" + table.rows[row][0] + "'");
    for (int g = 0; g < 3; ++g) {
      for (int col = 0; col < 4; ++col) {
        const std::string& cell = table.rows[row][1 + g * 4 + col];
        if (row == col) {
          if (!cell.empty()) throw CorruptFileError("orientation CSV: diagonal must be empty");
          continue;
        }
        out.rate[g][row][col] = parse_real(cell, "win rate");
      }
    }
  }
  return out;
}

}  // namespace warmstart
