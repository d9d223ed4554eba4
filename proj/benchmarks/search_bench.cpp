#include <benchmark/benchmark.h>

#include <memory>

#include "warmstart/agents.hpp"
#include "warmstart/enhancements.hpp"
#include "warmstart/mcts.hpp"
#include "warmstart/rhea.hpp"

using namespace warmstart;

static void SearchFromOpening(benchmark::State& state) {
  const auto kind = static_cast<Enhancement>(state.range(0));
  const GameState root = new_game(GameKind::ConnectFour, 6, 4);
  const SearchStrategy strategy = make_enhanced_searcher(kind, 0, 5, 100.0);
  auto model = std::make_shared<const Model>(architecture_for(root.spec()));
  const Evaluator eval = network_evaluator(model);
  Rng rng(3);
  for (auto _ : state) {
    Mcts mcts({100, 1.0}, strategy, eval);
    benchmark::DoNotOptimize(mcts.search(root, rng));
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(SearchFromOpening)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

static void RolloutSearch(benchmark::State& state) {
  const GameState root = new_game(GameKind::Gobang, 6, 4);
  SearchStrategy strategy;
  strategy.leaf = LeafRule::Rollout;
  if (state.range(0)) strategy.selection = SelectionRule::Rave;
  Rng rng(4);
  for (auto _ : state) {
    Mcts mcts({100, 1.0}, strategy, uniform_evaluator());
    benchmark::DoNotOptimize(mcts.search(root, rng));
  }
}
BENCHMARK(RolloutSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void RheaMove(benchmark::State& state) {
  const GameState root = new_game(GameKind::Othello, 6, 4);
  RheaConfig cfg;
  cfg.rollout_budget = static_cast<int>(state.range(0));
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(choose_move(root, cfg, rng));
}
BENCHMARK(RheaMove)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
