#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "warmstart/config.hpp"
#include "warmstart/csv.hpp"
#include "warmstart/elo.hpp"
#include "warmstart/errors.hpp"
#include "warmstart/export.hpp"
#include "warmstart/match.hpp"
#include "warmstart/selfplay.hpp"

namespace wsaz {
namespace {

using namespace warmstart;
namespace fs = std::filesystem;

const char* kUsage =
    "usage: wsaz <command> [options]\n"
    "\n"
    "commands:\n"
    "  train        self-play training run (resumes an existing run directory)\n"
    "  orientation  random/mcts/rave/rhea win-rate matrix on gobang, connect4 and othello\n"
    "  tournament   round robin over listed agents, writes records.csv and elo.csv\n"
    "  elo          ratings from a records.csv file\n"
    "  pit          a match between two agents\n"
    "  export       collect run directories into report, aggregate and summary CSVs\n"
    "\n"
    "agents: random, mcts[:m], rave[:m], rhea[:budget], net:<checkpoint>\n"
    "\n"
    "Run 'wsaz <command> --help' for the options of a command.\n";

std::string key_reference() {
  const RunConfig defaults;
  std::ostringstream os;
  os << "configuration keys (config file 'key=value' lines or --key value flags; flags win):\n";
  for (const auto& k : config_keys())
    os << "  " << std::left << std::setw(14) << k.name << std::setw(14) << k.get(defaults) << k.description << "\n";
  return os.str();
}

struct GameOptions {
  std::string game = "gobang";
  int board_size = 6;
  int win_length = 4;

  void add_to(CLI::App& app) {
    app.add_option("--game", game, "othello, connect4 or gobang")->capture_default_str();
    app.add_option("--board-size", board_size, "board edge length")->capture_default_str();
    app.add_option("--win-length", win_length, "stones in a row needed to win")->capture_default_str();
  }
  GameSpec spec() const {
    GameSpec s{parse_game_kind(game), board_size, win_length};
    s.validate();
    return s;
  }
};

void print_match(std::ostream& out, const MatchRecord& r) {
  out << r.agent_a << " vs " << r.agent_b << ": " << r.wins_a << " wins, " << r.draws << " draws, " << r.wins_b
      << " losses over " << r.games << " games (score " << std::fixed << std::setprecision(3) << r.score_a()
      << ")\n";
  out.unsetf(std::ios::floatfield);
}

void print_elo(std::ostream& out, const EloTable& elo) {
  for (std::size_t i = 0; i < elo.agents.size(); ++i)
    out << std::left << std::setw(24) << elo.agents[i] << std::right << std::fixed << std::setprecision(1)
        << std::setw(9) << elo.ratings[i] << "  (" << elo.games[i] << " games)\n";
  out.unsetf(std::ios::floatfield);
}

std::vector<AgentFactory> make_agents(const std::vector<std::string>& names, const GameSpec& spec, int simulations) {
  std::vector<AgentFactory> agents;
  for (const auto& n : names) agents.emplace_back(parse_agent_spec(n, simulations), spec);
  return agents;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::map<std::string, std::string> commands = {
      {"train", ""}, {"orientation", ""}, {"tournament", ""}, {"elo", ""}, {"pit", ""}, {"export", ""}};
  if (argc < 2) {
    err << kUsage;
    return 2;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h" || command == "help") {
    out << kUsage << "\n" << key_reference();
    return 0;
  }
  if (!commands.count(command)) {
    err << "wsaz: unknown command '" << command << "'\n\n" << kUsage;
    return 2;
  }

  CLI::App app("wsaz " + command, "wsaz " + command);
  int status = 0;

  // train
  std::string config_file;
  std::map<std::string, std::string> flag_values;
  int max_new = -1;
  // orientation / tournament / pit
  GameOptions game_opts;
  int games = 100;
  int simulations = 100;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_path;
  std::string records_path;
  std::vector<std::string> agent_names;
  std::vector<std::string> dirs;

  if (command == "train") {
    app.description("Self-play training with optional warm-start enhancements.");
    app.footer(key_reference());
    app.add_option("--config", config_file, "key=value configuration file");
    for (const auto& k : config_keys()) app.add_option("--" + k.name, flag_values[k.name], k.description);
    app.add_option("--max-iterations", max_new, "stop after this many new iterations");
  } else if (command == "orientation") {
    app.description("Win rates (percent, column agent vs row agent) of random, mcts, rave and rhea.");
    app.add_option("--games", games, "games per pairing")->capture_default_str();
    app.add_option("--simulations", simulations, "rollouts per move for mcts, rave and rhea")->capture_default_str();
    app.add_option("--board-size", game_opts.board_size, "board edge length")->capture_default_str();
    app.add_option("--win-length", game_opts.win_length, "connection length")->capture_default_str();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--workers", workers, "parallel games")->capture_default_str();
    app.add_option("--out", out_path, "CSV output file (default: stdout)");
    app.add_option("--records", records_path, "also write per-game records here");
  } else if (command == "tournament") {
    games = 20;
    app.description("Round robin tournament; writes records.csv and elo.csv.");
    game_opts.add_to(app);
    app.add_option("--games", games, "games per pair")->capture_default_str();
    app.add_option("--simulations", simulations, "default simulations for search agents")->capture_default_str();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--workers", workers, "parallel games")->capture_default_str();
    app.add_option("--out", out_path, "output directory")->required();
    app.add_option("agents", agent_names, "agent specs")->required()->expected(2, -1);
  } else if (command == "elo") {
    app.description("Bradley-Terry ratings from a records.csv file.");
    app.add_option("records", records_path, "records.csv")->required();
    app.add_option("--out", out_path, "write elo.csv here");
  } else if (command == "pit") {
    games = 20;
    app.description("A match between two agents; agent A moves first in even games.");
    game_opts.add_to(app);
    app.add_option("--games", games, "number of games")->capture_default_str();
    app.add_option("--simulations", simulations, "default simulations for search agents")->capture_default_str();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--workers", workers, "parallel games")->capture_default_str();
    app.add_option("--out", out_path, "write records.csv here");
    app.add_option("agents", agent_names, "two agent specs")->required()->expected(2);
  } else if (command == "export") {
    app.description("Export reports, records and ratings of one or more run directories.");
    app.add_option("runs", dirs, "run directories")->required()->expected(1, -1);
    app.add_option("--out", out_path, "output directory (default: <first run>/export)");
  }

  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "wsaz " << command << ": " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (command == "train") {
      ConfigOverrides overrides;
      for (const auto& k : config_keys())
        if (app.count("--" + k.name)) overrides.emplace_back(k.name, flag_values[k.name]);
      std::optional<fs::path> file;
      if (!config_file.empty()) file = config_file;
      const RunConfig cfg = parse_config(file, overrides);
      TrainLoopOptions options;
      if (max_new >= 0) options.max_new_iterations = max_new;
      options.on_report = [&](const IterationReport& r) {
        out << "iteration " << r.iteration << ": " << r.examples << " examples, loss " << format_double(r.mean_loss)
            << ", arena " << r.arena_wins << "/" << r.arena_draws << "/" << r.arena_losses
            << (r.accepted ? " accepted" : " rejected") << "\n";
        out.flush();
      };
      const TrainLoopResult result = train_loop(cfg, options);
      out << "run directory: " << cfg.output_dir << " (" << result.reports.size() << " iterations run, resumed at "
          << result.resumed_from << ")\n";
    } else if (command == "orientation") {
      OrientationConfig cfg;
      cfg.games = games;
      cfg.simulations = simulations;
      cfg.board_size = game_opts.board_size;
      cfg.win_length = game_opts.win_length;
      cfg.seed = seed;
      cfg.workers = workers;
      const OrientationTable table = orientation_experiment(cfg);
      const CsvTable csv = orientation_csv(table);
      if (out_path.empty()) {
        out << to_csv_text(csv);
      } else {
        write_csv(out_path, csv);
      }
      if (!records_path.empty()) write_csv(records_path, records_table(table.matches));
    } else if (command == "tournament") {
      const GameSpec spec = game_opts.spec();
      const auto agents = make_agents(agent_names, spec, simulations);
      const auto records = round_robin(spec, agents, games, seed, workers);
      for (const auto& r : records) print_match(out, r);
      const EloTable elo = compute_elo(records);
      print_elo(out, elo);
      write_csv(fs::path(out_path) / "records.csv", records_table(records));
      write_csv(fs::path(out_path) / "elo.csv", elo_table(elo));
    } else if (command == "elo") {
      if (!fs::exists(records_path)) throw std::runtime_error("records file " + records_path + " does not exist");
      const auto records = parse_records(read_csv(records_path));
      const EloTable elo = compute_elo(records);
      print_elo(out, elo);
      if (!out_path.empty()) write_csv(out_path, elo_table(elo));
    } else if (command == "pit") {
      const GameSpec spec = game_opts.spec();
      const auto agents = make_agents(agent_names, spec, simulations);
      const MatchRecord rec = play_match(spec, agents[0], agents[1], games, seed, workers);
      print_match(out, rec);
      if (!out_path.empty()) write_csv(out_path, records_table(std::span<const MatchRecord>(&rec, 1)));
    } else if (command == "export") {
      std::vector<fs::path> paths(dirs.begin(), dirs.end());
      const fs::path target = out_path.empty() ? paths.front() / "export" : fs::path(out_path);
      const ExportSummary summary = export_results(paths, target);
      for (const auto& p : summary.written) out << "wrote " << p.string() << "\n";
    }
  } catch (const ConfigError& e) {
    err << "wsaz " << command << ": " << e.what() << "\n";
    status = 2;
  } catch (const std::exception& e) {
    err << "wsaz " << command << ": " << e.what() << "\n";
    status = 1;
  }
  return status;
}

}  // namespace wsaz
