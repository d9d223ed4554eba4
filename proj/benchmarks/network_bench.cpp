#include <benchmark/benchmark.h>

#include <vector>

#include "warmstart/network.hpp"

using namespace warmstart;

namespace {

std::vector<TrainingExample> examples(const NetShape& shape, int count, Rng& rng) {
  std::vector<TrainingExample> out(count);
  for (auto& ex : out) {
    ex.state.resize(shape.board_size * shape.board_size);
    for (auto& x : ex.state) x = static_cast<float>(rng.uniform_int(3) - 1);
    ex.policy.assign(shape.action_count, 1.0f / shape.action_count);
    ex.z = 1.0f;
  }
  return out;
}

}  // namespace

static void Predict(benchmark::State& state) {
  const NetShape shape = architecture_for({GameKind::Gobang, 6, 4});
  Rng rng(1);
  const Model net(shape, rng);
  const auto ex = examples(shape, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(net.predict(ex[0].state));
}
BENCHMARK(Predict);

static void LossAndGradient(benchmark::State& state) {
  const NetShape shape = architecture_for({GameKind::Gobang, 6, 4});
  Rng rng(2);
  const Model net(shape, rng);
  const auto ex = examples(shape, static_cast<int>(state.range(0)), rng);
  std::vector<const TrainingExample*> batch;
  for (const auto& e : ex) batch.push_back(&e);
  std::vector<float> grad;
  for (auto _ : state) benchmark::DoNotOptimize(net.loss_and_gradient(batch, 0.3, &rng, &grad));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(LossAndGradient)->Arg(1)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
