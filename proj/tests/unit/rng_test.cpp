#include <gtest/gtest.h>

#include <vector>

#include "warmstart/rng.hpp"

using warmstart::Rng;

TEST(Rng, DerivedStreamsAreReproducibleAndDistinct) {
  Rng a = Rng::derive(42, {1, 2});
  Rng b = Rng::derive(42, {1, 2});
  Rng c = Rng::derive(42, {2, 1});
  Rng d = Rng::derive(43, {1, 2});
  const auto x = a.engine()();
  EXPECT_EQ(x, b.engine()());
  EXPECT_NE(x, c.engine()());
  EXPECT_NE(x, d.engine()());
}

TEST(Rng, UniformIntCoversRangeEvenly) {
  Rng rng(7);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) counts[rng.uniform_int(6)]++;
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_THROW(rng.uniform_int(0), std::invalid_argument);
}

TEST(Rng, CategoricalFollowsWeightsAndSkipsZeros) {
  Rng rng(9);
  const std::vector<double> w{0.0, 1.0, 3.0, 0.0};
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 40000; ++i) counts[rng.categorical(w)]++;
  EXPECT_EQ(counts[0], 0);
  EXPECT_EQ(counts[3], 0);
  EXPECT_NEAR(counts[2] / 40000.0, 0.75, 0.01);
  EXPECT_THROW(rng.categorical(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(Rng, BernoulliRate) {
  Rng rng(11);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += rng.bernoulli(0.2);
  EXPECT_NEAR(hits / 100000.0, 0.2, 0.005);
}

TEST(Rng, TagsOfDifferentNamesDiffer) {
  EXPECT_NE(warmstart::tag_of("episode"), warmstart::tag_of("arena"));
  EXPECT_EQ(warmstart::tag_of("train"), warmstart::tag_of("train"));
}
