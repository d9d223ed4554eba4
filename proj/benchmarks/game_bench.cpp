#include <benchmark/benchmark.h>

#include "warmstart/game.hpp"
#include "warmstart/rng.hpp"

using namespace warmstart;

static void RandomPlayout(benchmark::State& state) {
  const GameSpec spec{static_cast<GameKind>(state.range(0)), 6, 4};
  Rng rng(1);
  std::int64_t plies = 0;
  for (auto _ : state) {
    GameState s = GameState::initial(spec);
    while (!s.terminal()) {
      const auto moves = s.legal_moves();
      s = s.apply(moves[rng.uniform_int(static_cast<int>(moves.size()))]);
      ++plies;
    }
    benchmark::DoNotOptimize(s.outcome());
  }
  state.SetLabel(std::string(to_string(spec.kind)));
  state.counters["plies/s"] = benchmark::Counter(static_cast<double>(plies), benchmark::Counter::kIsRate);
}
BENCHMARK(RandomPlayout)->DenseRange(0, 2);

static void EncodeAndSymmetries(benchmark::State& state) {
  const GameSpec spec{GameKind::Gobang, 6, 4};
  GameState s = GameState::initial(spec);
  for (Move m : {14, 15, 21, 20, 8}) s = s.apply(m);
  const std::vector<float> policy(36, 1.0f / 36);
  for (auto _ : state) {
    auto images = symmetries(spec, encode_state(s), policy);
    benchmark::DoNotOptimize(images);
  }
}
BENCHMARK(EncodeAndSymmetries);

BENCHMARK_MAIN();
