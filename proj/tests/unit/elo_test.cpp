#include <gtest/gtest.h>

#include "oracles.hpp"
#include "warmstart/csv.hpp"
#include "warmstart/elo.hpp"
#include "warmstart/errors.hpp"

using namespace warmstart;

namespace {

MatchRecord result(const std::string& a, const std::string& b, int wa, int wb, int d = 0) {
  MatchRecord r;
  r.agent_a = a;
  r.agent_b = b;
  r.wins_a = wa;
  r.wins_b = wb;
  r.draws = d;
  r.games = wa + wb + d;
  return r;
}

}  // namespace

TEST(Elo, TwoAgentGapMatchesOracle) {
  for (auto [wa, wb, d] : {std::tuple{15, 5, 0}, std::tuple{7, 2, 4}, std::tuple{30, 1, 0}}) {
    const std::vector<MatchRecord> rec{result("a", "b", wa, wb, d)};
    const EloTable t = compute_elo(rec);
    const double gap = oracle::two_agent_elo_gap(wa + 0.5 * d + 1, wb + 0.5 * d + 1);
    EXPECT_NEAR(t.rating("a") - t.rating("b"), gap, 0.05);
    EXPECT_NEAR(t.rating("a") + t.rating("b"), 0.0, 1e-9);
  }
}

TEST(Elo, MonotoneInWins) {
  double last = 0.0;
  for (int w = 11; w <= 20; ++w) {
    const std::vector<MatchRecord> rec{result("a", "b", w, 20 - w)};
    const double gap = compute_elo(rec).rating("a");
    EXPECT_GT(gap, last);
    last = gap;
  }
}

TEST(Elo, PriorKeepsSweepsFinite) {
  const std::vector<MatchRecord> one{result("a", "b", 1, 0)};
  const std::vector<MatchRecord> ten{result("a", "b", 10, 0)};
  const double small = compute_elo(one).rating("a");
  const double big = compute_elo(ten).rating("a");
  EXPECT_GT(small, 0.0);
  EXPECT_GT(big, small);
  EXPECT_LT(big, 400.0);
}

TEST(Elo, TransitiveChainIsOrdered) {
  const std::vector<MatchRecord> rec{result("a", "b", 14, 6), result("b", "c", 14, 6), result("a", "c", 17, 3)};
  const EloTable t = compute_elo(rec);
  EXPECT_GT(t.rating("a"), t.rating("b"));
  EXPECT_GT(t.rating("b"), t.rating("c"));
  EXPECT_EQ(t.agents, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(t.games, (std::vector<int>{40, 40, 40}));
  EXPECT_NEAR(t.ratings[0] + t.ratings[1] + t.ratings[2], 0.0, 1e-9);
  EXPECT_LT(t.gradient_norm, 1e-3);
}

TEST(Elo, DisconnectedGraphIsAnError) {
  const std::vector<MatchRecord> rec{result("a", "b", 3, 2), result("c", "d", 1, 4)};
  EXPECT_THROW(compute_elo(rec), EloError);
  const std::vector<MatchRecord> draws_only{result("a", "b", 3, 2), result("b", "c", 0, 0, 6)};
  EXPECT_THROW(compute_elo(draws_only), EloError);
  EXPECT_THROW(compute_elo(std::vector<MatchRecord>{result("a", "a", 1, 1)}), EloError);
  EXPECT_THROW(compute_elo(std::vector<MatchRecord>{}), EloError);
}

TEST(Elo, UnknownAgentLookup) {
  const std::vector<MatchRecord> rec{result("a", "b", 3, 2)};
  EXPECT_THROW(compute_elo(rec).rating("zed"), EloError);
}

TEST(Elo, CsvRoundTrip) {
  const std::vector<MatchRecord> rec{result("a", "b", 14, 6), result("b", "c", 9, 11)};
  const EloTable t = compute_elo(rec);
  const EloTable back = parse_elo(parse_csv_text(to_csv_text(elo_table(t))));
  EXPECT_EQ(back.agents, t.agents);
  EXPECT_EQ(back.games, t.games);
  for (std::size_t i = 0; i < t.ratings.size(); ++i) EXPECT_NEAR(back.ratings[i], t.ratings[i], 1e-6);
}
