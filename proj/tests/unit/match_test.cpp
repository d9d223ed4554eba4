#include <gtest/gtest.h>

#include <memory>

#include "warmstart/csv.hpp"
#include "warmstart/errors.hpp"
#include "warmstart/match.hpp"

using namespace warmstart;

namespace {

const GameSpec kGobang{GameKind::Gobang, 6, 4};

AgentFactory factory(const std::string& text, const GameSpec& spec = kGobang) {
  return AgentFactory(parse_agent_spec(text, 10), spec);
}

}  // namespace

TEST(AgentSpec, Parsing) {
  const AgentSpec m = parse_agent_spec("mcts:25");
  EXPECT_EQ(m.kind, AgentKind::MctsRollout);
  EXPECT_EQ(m.simulations, 25);
  EXPECT_EQ(parse_agent_spec("rave", 40).simulations, 40);
  EXPECT_EQ(parse_agent_spec("rhea:300").kind, AgentKind::Rhea);
  EXPECT_EQ(parse_agent_spec("random").kind, AgentKind::Random);
  const AgentSpec n = parse_agent_spec("net:some/dir/iter_3.ckpt");
  EXPECT_EQ(n.kind, AgentKind::NeuralMcts);
  EXPECT_EQ(n.checkpoint, "some/dir/iter_3.ckpt");
  EXPECT_NE(m.name, parse_agent_spec("mcts:26").name);
  EXPECT_THROW(parse_agent_spec("alphabeta"), ConfigError);
  EXPECT_THROW(parse_agent_spec("mcts:0"), ConfigError);
  EXPECT_THROW(parse_agent_spec("mcts:x"), ConfigError);
  EXPECT_THROW(parse_agent_spec("net:"), ConfigError);
}

TEST(Match, RandomAgentsAreEvenWhenColoursAlternate) {
  const MatchRecord r = play_match(kGobang, factory("random"), factory("random"), 1000, 5);
  EXPECT_EQ(r.games, 1000);
  EXPECT_EQ(r.wins_a + r.wins_b + r.draws, 1000);
  EXPECT_NEAR(r.score_a(), 0.5, 0.05);
  for (const auto& g : r.game_log) EXPECT_EQ(g.first_mover, g.game_index % 2 == 0 ? 'A' : 'B');
}

TEST(Match, LogReplaysToTheRecordedResult) {
  const MatchRecord r = play_match(kGobang, factory("mcts:20"), factory("random"), 6, 9);
  for (const auto& g : r.game_log) {
    GameState s = GameState::initial(kGobang);
    for (Move m : g.moves) s = s.apply(m);
    ASSERT_TRUE(s.terminal());
    char result = 'D';
    if (s.outcome().kind == Outcome::Kind::Win) {
      const bool first_won = s.outcome().winner == Player::First;
      result = first_won == (g.first_mover == 'A') ? 'A' : 'B';
    }
    EXPECT_EQ(result, g.result);
  }
}

TEST(Match, DeterministicRegardlessOfWorkers) {
  const GameSpec c4{GameKind::ConnectFour, 6, 4};
  const MatchRecord one = play_match(c4, factory("rave:16", c4), factory("rhea:40", c4), 6, 3, 1);
  const MatchRecord two = play_match(c4, factory("rave:16", c4), factory("rhea:40", c4), 6, 3, 3);
  EXPECT_EQ(one.game_log, two.game_log);
  EXPECT_EQ(one.wins_a, two.wins_a);
  const MatchRecord other = play_match(c4, factory("rave:16", c4), factory("rhea:40", c4), 6, 4, 1);
  EXPECT_NE(one.game_log, other.game_log);
}

TEST(Match, NeuralAgentPlaysLegalGames) {
  auto model = std::make_shared<const Model>(architecture_for(kGobang));
  AgentSpec spec = parse_agent_spec("net:unused");
  spec.simulations = 8;
  const AgentFactory net(spec, model);
  const MatchRecord r = play_match(kGobang, net, factory("random"), 2, 1);
  EXPECT_EQ(r.games, 2);
}

TEST(RoundRobin, EveryPairOnce) {
  const std::vector<AgentFactory> agents{factory("random"), factory("mcts:8"), factory("rhea:20")};
  const auto records = round_robin(kGobang, agents, 2, 1);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].agent_a, agents[0].name());
  EXPECT_EQ(records[0].agent_b, agents[1].name());
  EXPECT_EQ(records[2].agent_a, agents[1].name());
  for (const auto& r : records) EXPECT_EQ(r.games, 2);
  const std::vector<AgentFactory> dup{factory("random"), factory("random")};
  EXPECT_THROW(round_robin(kGobang, dup, 2, 1), ConfigError);
}

TEST(Csv, RecordsRoundTrip) {
  const std::vector<AgentFactory> agents{factory("random"), factory("mcts:8"), factory("rave:8")};
  const auto records = round_robin(kGobang, agents, 3, 2);
  const auto back = parse_records(parse_csv_text(to_csv_text(records_table(records))));
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].game_log, records[i].game_log);
    EXPECT_EQ(back[i].wins_a, records[i].wins_a);
    EXPECT_EQ(back[i].draws, records[i].draws);
  }
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(parse_csv_text(""), CorruptFileError);
  EXPECT_THROW(parse_csv_text("a,b\n1\n"), CorruptFileError);
  EXPECT_THROW(parse_records(parse_csv_text("x,y\n1,2\n")), CorruptFileError);
  EXPECT_THROW(csv_line({"a,b"}), std::invalid_argument);
}

TEST(Csv, OrientationRoundTrip) {
  OrientationTable t;
  for (int g = 0; g < 3; ++g)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (r != c) t.rate[g][r][c] = 12.5 * ((g + r + c) % 8);
  const OrientationTable back = parse_orientation(parse_csv_text(to_csv_text(orientation_csv(t))));
  EXPECT_EQ(back.rate, t.rate);
  EXPECT_DOUBLE_EQ(t.win_rate(GameKind::Othello, "rhea", "random"), t.rate[2][0][3]);
}
