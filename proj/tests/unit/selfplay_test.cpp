#include <gtest/gtest.h>

#include <filesystem>

#include "warmstart/checkpoint.hpp"
#include "warmstart/csv.hpp"
#include "warmstart/errors.hpp"
#include "warmstart/selfplay.hpp"

using namespace warmstart;
namespace fs = std::filesystem;

namespace {

RunConfig tiny_config(const std::string& dir) {
  RunConfig cfg;
  auto& p = cfg.pipeline;
  p.game = {GameKind::Gobang, 4, 3};
  p.iterations = 2;
  p.warm_iterations = 1;
  p.episodes = 2;
  p.temperature_moves = 2;
  p.simulations = 8;
  p.epochs = 1;
  p.batch_size = 16;
  p.arena_games = 2;
  p.enhancement = Enhancement::WRoRa;
  p.seed = 5;
  cfg.output_dir = (fs::temp_directory_path() / "warmstart_selfplay_test" / dir).string();
  fs::remove_all(cfg.output_dir);
  return cfg;
}

}  // namespace

TEST(Arena, AcceptanceThreshold) {
  EXPECT_TRUE(arena_accepts(25, 15, 0.6));
  EXPECT_FALSE(arena_accepts(24, 16, 0.6));
  EXPECT_FALSE(arena_accepts(0, 0, 0.6));
  EXPECT_TRUE(arena_accepts(1, 0, 0.6));
  EXPECT_FALSE(arena_accepts(1, 0, 1.0));
}

TEST(Episode, LabelsFollowTheMover) {
  PipelineConfig p;
  p.game = {GameKind::Gobang, 4, 3};
  p.simulations = 10;
  p.temperature_moves = 4;
  auto model = std::make_shared<const Model>(architecture_for(p.game));
  Rng rng(2);
  const auto examples = run_episode({}, model, p, rng);
  ASSERT_GE(examples.size(), 5u);
  // Consecutive positions belong to alternating movers.
  for (std::size_t t = 1; t < examples.size(); ++t) EXPECT_EQ(examples[t].z, -examples[t - 1].z);
  for (const auto& ex : examples) {
    double mass = 0.0;
    for (float x : ex.policy) mass += x;
    EXPECT_NEAR(mass, 1.0, 1e-5);
  }
  // The player moving last made the final move: if anyone won, it was them.
  EXPECT_GE(examples.back().z, 0.0f);
}

TEST(Episode, SymmetryMultipliesExamples) {
  PipelineConfig p;
  p.game = {GameKind::Gobang, 4, 3};
  p.simulations = 6;
  auto model = std::make_shared<const Model>(architecture_for(p.game));
  Rng a(4), b(4);
  const auto plain = run_episode({}, model, p, a);
  p.symmetry = true;
  const auto augmented = run_episode({}, model, p, b);
  EXPECT_EQ(augmented.size(), plain.size() * 8);
}

TEST(Episode, GreedyPlayIsDeterministicForAFixedModel) {
  PipelineConfig p;
  p.game = {GameKind::ConnectFour, 6, 4};
  p.simulations = 12;
  p.temperature_moves = 0;
  auto model = std::make_shared<const Model>(architecture_for(p.game));
  Rng a(1), b(99);
  const auto x = run_episode({}, model, p, a);
  const auto y = run_episode({}, model, p, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].state, y[i].state);
}

TEST(Pipeline, StrategyFollowsTheThreshold) {
  RunConfig cfg = tiny_config("strategy");
  cfg.pipeline.warm_iterations = 3;
  const Pipeline p(cfg);
  EXPECT_EQ(p.strategy_for(0).leaf, LeafRule::Mixed);
  EXPECT_DOUBLE_EQ(p.strategy_for(1).rollout_weight, 2.0 / 3.0);
  EXPECT_EQ(p.strategy_for(3), SearchStrategy{.equivalence = 8.0});
}

TEST(Pipeline, OneIterationFillsTheBufferAndReports) {
  RunConfig cfg = tiny_config("one");
  Pipeline p(cfg);
  std::size_t seen = 0;
  const IterationReport r = p.run_iteration(0, [&](const std::vector<TrainingExample>& ex) { seen = ex.size(); });
  EXPECT_EQ(r.examples, seen);
  EXPECT_EQ(p.buffer().example_count(), seen);
  EXPECT_EQ(r.losses.size(), 1u);
  EXPECT_EQ(r.arena_wins + r.arena_draws + r.arena_losses, 2);
  EXPECT_EQ(r.accepted, arena_accepts(r.arena_wins, r.arena_losses, 0.6));
}

TEST(TrainLoop, WritesRunDirectoryAndResumes) {
  const RunConfig cfg = tiny_config("resume");
  TrainLoopOptions first;
  first.max_new_iterations = 1;
  const TrainLoopResult a = train_loop(cfg, first);
  EXPECT_EQ(a.resumed_from, 0);
  ASSERT_EQ(a.reports.size(), 1u);
  const fs::path dir = cfg.output_dir;
  EXPECT_TRUE(fs::exists(dir / "config.snapshot"));
  EXPECT_TRUE(fs::exists(checkpoint_path(dir, 0)));
  EXPECT_TRUE(fs::exists(examples_path(dir, 0)));
  EXPECT_EQ(load_examples(examples_path(dir, 0)).size(), a.reports[0].examples);

  const TrainLoopResult b = train_loop(cfg);
  EXPECT_EQ(b.resumed_from, 1);
  ASSERT_EQ(b.reports.size(), 1u);
  EXPECT_EQ(parse_reports(read_csv(dir / "reports.csv")).size(), 2u);

  const RunConfig fresh = tiny_config("resume_fresh");
  const TrainLoopResult c = train_loop(fresh);
  EXPECT_EQ(c.reports.size(), 2u);
  EXPECT_TRUE(c.model == b.model);

  const TrainLoopResult done = train_loop(cfg);
  EXPECT_TRUE(done.reports.empty());
}

TEST(TrainLoop, RefusesAChangedConfiguration) {
  RunConfig cfg = tiny_config("refuse");
  TrainLoopOptions one;
  one.max_new_iterations = 1;
  train_loop(cfg, one);
  cfg.pipeline.simulations = 9;
  EXPECT_THROW(train_loop(cfg, one), ConfigError);
  cfg.pipeline.simulations = 8;
  cfg.workers = 2;
  EXPECT_NO_THROW(train_loop(cfg, one));
}
