#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "warmstart/enhancements.hpp"
#include "warmstart/errors.hpp"

using namespace warmstart;

TEST(Enhancement, ParsesCaseInsensitively) {
  EXPECT_EQ(parse_enhancement("wrora"), Enhancement::WRoRa);
  EXPECT_EQ(parse_enhancement("RAVE"), Enhancement::Rave);
  for (Enhancement e : all_enhancements()) EXPECT_EQ(parse_enhancement(to_string(e)), e);
  EXPECT_THROW(parse_enhancement("amaf"), ConfigError);
}

TEST(RaveBeta, MatchesClosedForm) {
  EXPECT_DOUBLE_EQ(rave_beta(0, 100.0), 1.0);
  EXPECT_DOUBLE_EQ(rave_beta(100, 100.0), 0.5);
  EXPECT_LT(rave_beta(10000, 100.0), 0.06);
}

TEST(RaveValue, BlendsBothTerms) {
  const RaveInputs in{0.2, 3, 12, -0.4, 30, 90, 0.25};
  const double b = rave_beta(12, 36.0);
  const double u = 0.2 + 1.5 * 0.25 * std::sqrt(12.0) / 4.0;
  const double ur = -0.4 + 1.5 * 0.25 * std::sqrt(90.0) / 31.0;
  EXPECT_NEAR(uct_rave_value(in, 1.5, 36.0), (1 - b) * u + b * ur, 1e-12);
}

TEST(Schedule, LinearDecayAndRangeChecks) {
  EXPECT_DOUBLE_EQ(schedule_weight(0, 5), 1.0);
  EXPECT_DOUBLE_EQ(schedule_weight(2, 5), 0.6);
  EXPECT_DOUBLE_EQ(schedule_weight(5, 5), 0.0);
  EXPECT_THROW(schedule_weight(6, 5), std::invalid_argument);
  EXPECT_THROW(schedule_weight(-1, 5), std::invalid_argument);
  EXPECT_THROW(schedule_weight(0, 0), std::invalid_argument);
}

TEST(LeafValue, PerKind) {
  EXPECT_DOUBLE_EQ(leaf_value(Enhancement::Baseline, 0.3, -1, 0.5), 0.3);
  EXPECT_DOUBLE_EQ(leaf_value(Enhancement::Rave, 0.3, -1, 0.5), 0.3);
  EXPECT_DOUBLE_EQ(leaf_value(Enhancement::Rollout, 0.3, -1, 0.5), -1.0);
  EXPECT_DOUBLE_EQ(leaf_value(Enhancement::RoRa, 0.3, -1, 0.5), -1.0);
  EXPECT_DOUBLE_EQ(leaf_value(Enhancement::WRo, 0.3, -1, 0.25), 0.75 * 0.3 - 0.25);
  EXPECT_DOUBLE_EQ(leaf_value(Enhancement::WRoRa, 0.3, 1, 0.0), 0.3);
}

TEST(Searcher, CollapsesToBaselineAfterThreshold) {
  const SearchStrategy base = make_enhanced_searcher(Enhancement::Baseline, 0, 5, 100.0);
  for (Enhancement e : all_enhancements()) {
    EXPECT_EQ(make_enhanced_searcher(e, 5, 5, 100.0), base);
    EXPECT_EQ(make_enhanced_searcher(e, 9, 5, 100.0), base);
  }
  const SearchStrategy w = make_enhanced_searcher(Enhancement::WRoRa, 1, 4, 100.0);
  EXPECT_EQ(w.selection, SelectionRule::Rave);
  EXPECT_EQ(w.leaf, LeafRule::Mixed);
  EXPECT_DOUBLE_EQ(w.rollout_weight, 0.75);
  EXPECT_EQ(make_enhanced_searcher(Enhancement::RoRa, 0, 4, 1.0).leaf, LeafRule::Rollout);
  EXPECT_EQ(make_enhanced_searcher(Enhancement::Rollout, 0, 4, 1.0).selection, SelectionRule::Puct);
}

TEST(Rollout, EndsInTerminalAndReportsMoverValue) {
  Rng rng(3);
  const GameState s = new_game(GameKind::ConnectFour, 6, 4);
  for (int i = 0; i < 50; ++i) {
    const RolloutResult r = random_rollout(s, rng);
    GameState cur = s;
    for (Move m : r.moves) cur = cur.apply(m);
    ASSERT_TRUE(cur.terminal());
    EXPECT_EQ(r.value, cur.outcome().value_for(Player::First));
  }
}

TEST(Amaf, CreditsFirstOccurrencesWithActorSign) {
  NodeStats a = NodeStats::create({0, 1, 2, 3}, std::vector<float>(4, 1.0f));
  NodeStats b = NodeStats::create({1, 2, 3}, std::vector<float>(4, 1.0f));
  const std::vector<Move> actions{0, 1, 2, 0, 3};
  const std::vector<AmafEntry> entries{{&a, std::span<const Move>(actions), 1.0},
                                       {&b, std::span<const Move>(actions).subspan(1), -1.0}};
  std::vector<std::pair<int, Move>> updated;
  EXPECT_EQ(amaf_backup(entries, &updated), 4 + 3);
  // a: 0 at offset 0 (+1), 1 at 1 (-1), 2 at 2 (+1), 3 at 4 (+1); the repeat of 0 is skipped.
  EXPECT_EQ(a.q_rave, (std::vector<double>{1, -1, 1, 1}));
  EXPECT_EQ(a.n_rave, (std::vector<int>{1, 1, 1, 1}));
  // b: 1 at 0 (-1), 2 at 1 (+1), 0 illegal, 3 at 3 (+1).
  EXPECT_EQ(b.q_rave, (std::vector<double>{-1, 1, 1}));
  EXPECT_EQ(b.total_rave_visits, 3);
  EXPECT_EQ(updated.front(), (std::pair<int, Move>{0, 0}));
}

TEST(Amaf, IncrementalMean) {
  NodeStats a = NodeStats::create({0}, std::vector<float>(1, 1.0f));
  const std::vector<Move> one{0};
  for (double v : {1.0, 0.0, 0.5}) {
    const std::vector<AmafEntry> e{{&a, std::span<const Move>(one), v}};
    amaf_backup(e);
  }
  EXPECT_DOUBLE_EQ(a.q_rave[0], 0.5);
  EXPECT_EQ(a.n_rave[0], 3);
}

TEST(Amaf, SearchUpdatesMatchTheOracle) {
  SearchStrategy strategy = make_enhanced_searcher(Enhancement::RoRa, 0, 5, 50.0);
  Mcts mcts({200, 1.0}, strategy, uniform_evaluator());
  int checked = 0;
  mcts.set_observer([&](const SimulationTrace& t) {
    const auto expected = oracle::amaf_pairs(t);
    const std::set<std::pair<int, Move>> got(t.rave_updates.begin(), t.rave_updates.end());
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got.size(), t.rave_updates.size());
    ++checked;
  });
  Rng rng(12);
  mcts.search(new_game(GameKind::Gobang, 5, 4), rng);
  EXPECT_EQ(checked, 200);
}
