#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "warmstart/agents.hpp"
#include "warmstart/game.hpp"

namespace warmstart {

/// One finished game between agents A and B.
struct GameRecord {
  std::string agent_a;
  std::string agent_b;
  int game_index = 0;
  char first_mover = 'A';  // 'A' or 'B'
  char result = 'D';       // 'A', 'B' or 'D'
  std::vector<Move> moves;
  std::uint64_t seed = 0;
  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

struct MatchRecord {
  std::string agent_a;
  std::string agent_b;
  int games = 0;
  int wins_a = 0;
  int wins_b = 0;
  int draws = 0;
  std::vector<GameRecord> game_log;  // per-game colours, results and moves

  double score_a() const { return games == 0 ? 0.0 : (wins_a + 0.5 * draws) / games; }
  void add(const GameRecord& g);
};

/// Plays one game to termination; every move is checked by the rules engine.
GameRecord play_game(const GameSpec& spec, Agent& first, Agent& second, Rng& first_rng, Rng& second_rng);

/// `games` games; A moves first in even-numbered games. Game g uses seed
/// Rng::derive(seed, {g}) and fresh agent instances.
MatchRecord play_match(const GameSpec& spec, const AgentFactory& a, const AgentFactory& b, int games,
                       std::uint64_t seed, int workers = 1);

/// Every unordered pair (i < j, in list order) plays `games_per_pair` games.
std::vector<MatchRecord> round_robin(const GameSpec& spec, const std::vector<AgentFactory>& agents,
                                     int games_per_pair, std::uint64_t seed, int workers = 1);

/// Win-rate matrix of the random/mcts/rave/rhea comparison on the three games.
struct OrientationConfig {
  int games = 100;        // per pairing
  int simulations = 100;  // rollouts per move for mcts, rave and rhea
  int board_size = 6;
  int win_length = 4;
  std::uint64_t seed = 0;
  int workers = 1;
};

inline const std::array<std::string, 4> kOrientationAgents = {"random", "mcts", "rave", "rhea"};
inline const std::array<GameKind, 3> kOrientationGames = {GameKind::Gobang, GameKind::ConnectFour,
                                                         GameKind::Othello};

struct OrientationTable {
  /// rate[game][row][col]: percentage score of agent `col` against agent `row`;
  /// draws count half. Diagonal entries are unused.
  std::array<std::array<std::array<double, 4>, 4>, 3> rate{};
  std::vector<MatchRecord> matches;

  double win_rate(GameKind game, const std::string& col, const std::string& row) const;
};

OrientationTable orientation_experiment(const OrientationConfig& cfg);

}  // namespace warmstart
