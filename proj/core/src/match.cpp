#include "warmstart/match.hpp"

#include <algorithm>
#include <stdexcept>

#include "warmstart/errors.hpp"
#include "warmstart/parallel.hpp"

namespace warmstart {

void MatchRecord::add(const GameRecord& g) {
  ++games;
  if (g.result == 'A') {
    ++wins_a;
  } else if (g.result == 'B') {
    ++wins_b;
  } else {
    ++draws;
  }
  game_log.push_back(g);
}

GameRecord play_game(const GameSpec& spec, Agent& first, Agent& second, Rng& first_rng, Rng& second_rng) {
  GameRecord rec;
  GameState s = GameState::initial(spec);
  while (!s.terminal()) {
    const bool first_to_move = s.to_move() == Player::First;
    Agent& agent = first_to_move ? first : second;
    Rng& rng = first_to_move ? first_rng : second_rng;
    const Move m = agent.select_move(s, rng);
    s = s.apply(m);
    rec.moves.push_back(m);
  }
  const int v = s.outcome().value_for(Player::First);
  rec.first_mover = 'A';
  rec.result = v > 0 ? 'A' : v < 0 ? 'B' : 'D';
  return rec;
}

MatchRecord play_match(const GameSpec& spec, const AgentFactory& a, const AgentFactory& b, int games,
                       std::uint64_t seed, int workers) {
  if (games < 1) throw std::invalid_argument("a match needs at least one game");
  spec.validate();
  std::vector<GameRecord> log(games);
  parallel_for(games, workers, [&](int g) {
    const std::uint64_t game_seed = Rng::derive(seed, {static_cast<std::uint64_t>(g)}).engine()();
    Rng rng_a = Rng::derive(game_seed, {0});
    Rng rng_b = Rng::derive(game_seed, {1});
    auto agent_a = a.create();
    auto agent_b = b.create();
    const bool a_first = g % 2 == 0;
    GameRecord rec = a_first ? play_game(spec, *agent_a, *agent_b, rng_a, rng_b)
                             : play_game(spec, *agent_b, *agent_a, rng_b, rng_a);
    if (!a_first) {
      rec.first_mover = 'B';
      if (rec.result == 'A') {
        rec.result = 'B';
      } else if (rec.result == 'B') {
        rec.result = 'A';
      }
    }
    rec.agent_a = a.name();
    rec.agent_b = b.name();
    rec.game_index = g;
    rec.seed = game_seed;
    log[g] = std::move(rec);
  });
  MatchRecord out;
  out.agent_a = a.name();
  out.agent_b = b.name();
  for (const auto& rec : log) out.add(rec);
  return out;
}

std::vector<MatchRecord> round_robin(const GameSpec& spec, const std::vector<AgentFactory>& agents,
                                     int games_per_pair, std::uint64_t seed, int workers) {
  if (agents.size() < 2) throw std::invalid_argument("a round robin needs at least two agents");
  for (std::size_t i = 0; i < agents.size(); ++i)
    for (std::size_t j = i + 1; j < agents.size(); ++j)
      if (agents[i].name() == agents[j].name())
        throw ConfigError("duplicate agent name '" + agents[i].name() + "'");
  std::vector<MatchRecord> records;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      const std::uint64_t pair_seed = Rng::derive(seed, {i, j}).engine()();
      records.push_back(play_match(spec, agents[i], agents[j], games_per_pair, pair_seed, workers));
    }
  }
  return records;
}

namespace {

int agent_index(const std::string& name) {
  const auto it = std::find(kOrientationAgents.begin(), kOrientationAgents.end(), name);
  if (it == kOrientationAgents.end()) throw std::invalid_argument("unknown orientation agent " + name);
  return static_cast<int>(it - kOrientationAgents.begin());
}

int game_index(GameKind kind) {
  const auto it = std::find(kOrientationGames.begin(), kOrientationGames.end(), kind);
  return static_cast<int>(it - kOrientationGames.begin());
}

}  // namespace

double OrientationTable::win_rate(GameKind game, const std::string& col, const std::string& row) const {
  return rate[game_index(game)][agent_index(row)][agent_index(col)];
}

OrientationTable orientation_experiment(const OrientationConfig& cfg) {
  OrientationTable table;
  for (int g = 0; g < 3; ++g) {
    const GameSpec spec{kOrientationGames[g], cfg.board_size, cfg.win_length};
    std::vector<AgentFactory> agents;
    for (const auto& name : kOrientationAgents)
      agents.emplace_back(parse_agent_spec(name, cfg.simulations), spec);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const std::uint64_t seed =
            Rng::derive(cfg.seed, {tag_of(to_string(spec.kind)), static_cast<std::uint64_t>(i),
                                   static_cast<std::uint64_t>(j)})
                .engine()();
        MatchRecord rec = play_match(spec, agents[i], agents[j], cfg.games, seed, cfg.workers);
        table.rate[g][j][i] = 50.0 * (2 * rec.wins_a + rec.draws) / rec.games;
        table.rate[g][i][j] = 50.0 * (2 * rec.wins_b + rec.draws) / rec.games;
        table.matches.push_back(std::move(rec));
      }
    }
  }
  return table;
}

}  // namespace warmstart
