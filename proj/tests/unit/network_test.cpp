#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "warmstart/errors.hpp"
#include "warmstart/network.hpp"
#include "warmstart/replay_buffer.hpp"

using namespace warmstart;

namespace {

TrainingExample random_example(const NetShape& shape, Rng& rng) {
  TrainingExample ex;
  const int cells = shape.board_size * shape.board_size;
  ex.state.resize(cells);
  for (auto& x : ex.state) x = static_cast<float>(rng.uniform_int(3) - 1);
  ex.policy.assign(shape.action_count, 0.0f);
  ex.policy[rng.uniform_int(shape.action_count)] = 0.6f;
  ex.policy[rng.uniform_int(shape.action_count)] += 0.4f;
  ex.z = static_cast<float>(rng.uniform_int(3) - 1);
  return ex;
}

}  // namespace

TEST(Network, ProductionShapes) {
  const NetShape g = architecture_for({GameKind::Gobang, 6, 4});
  EXPECT_EQ(g.action_count, 36);
  EXPECT_EQ(g.channels, 64);
  EXPECT_EQ(g.hidden, 128);
  EXPECT_EQ(architecture_for({GameKind::Othello, 6, 4}).action_count, 37);
  EXPECT_EQ(architecture_for({GameKind::ConnectFour, 6, 4}).action_count, 6);
  EXPECT_NE(g.hash(), architecture_for({GameKind::Othello, 6, 4}).hash());
}

TEST(Network, PredictionIsADistributionAndBoundedValue) {
  Rng rng(1);
  const GameSpec spec{GameKind::Othello, 6, 4};
  const Model net(architecture_for(spec), rng);
  GameState s = GameState::initial(spec);
  for (int i = 0; i < 10 && !s.terminal(); ++i) {
    const Prediction p = net.predict(encode_state(s));
    ASSERT_EQ(p.policy.size(), 37u);
    EXPECT_NEAR(std::accumulate(p.policy.begin(), p.policy.end(), 0.0), 1.0, 1e-5);
    for (float x : p.policy) EXPECT_GE(x, 0.0f);
    EXPECT_GE(p.value, -1.0f);
    EXPECT_LE(p.value, 1.0f);
    s = s.apply(s.legal_moves().front());
  }
}

TEST(Network, ZeroNetworkIsUniform) {
  const Model net(architecture_for({GameKind::ConnectFour, 6, 4}));
  const Prediction p = net.predict(std::vector<float>(36, 1.0f));
  for (float x : p.policy) EXPECT_FLOAT_EQ(x, 1.0f / 6.0f);
  EXPECT_EQ(p.value, 0.0f);
}

TEST(Network, RejectsWrongInputSize) {
  const Model net(architecture_for({GameKind::Gobang, 6, 4}));
  EXPECT_THROW(net.predict(std::vector<float>(25)), std::invalid_argument);
}

TEST(Network, LossFormula) {
  Prediction p{{0.25f, 0.75f}, 0.5f};
  TrainingExample t{{}, {1.0f, 0.0f}, -1.0f};
  EXPECT_NEAR(loss(p, t), 2.25 - std::log(0.25), 1e-6);
  p.policy[0] = 0.0f;
  EXPECT_NEAR(loss(p, t), 2.25 - std::log(1e-12), 1e-6);
}

TEST(Network, GradientMatchesFiniteDifferences) {
  const NetShape shape{3, 4, 1, 2, 1, 4};
  Rng init(5);
  PolicyValueNet<double> net = Model(shape, init).cast<double>();
  Rng data(6);
  std::vector<TrainingExample> examples;
  for (int i = 0; i < 3; ++i) examples.push_back(random_example(shape, data));
  std::vector<const TrainingExample*> batch;
  for (const auto& e : examples) batch.push_back(&e);

  std::vector<double> grad;
  net.loss_and_gradient(batch, 0.0, nullptr, &grad);
  ASSERT_EQ(grad.size(), net.parameters().size());
  auto params = net.parameters();
  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); i += 7) {
    const double keep = params[i];
    params[i] = keep + 1e-6;
    const double up = net.loss_and_gradient(batch, 0.0, nullptr, nullptr);
    params[i] = keep - 1e-6;
    const double down = net.loss_and_gradient(batch, 0.0, nullptr, nullptr);
    params[i] = keep;
    const double numeric = (up - down) / 2e-6;
    worst = std::max(worst, std::abs(numeric - grad[i]) / std::max(1e-6, std::abs(numeric) + std::abs(grad[i])));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Network, TrainingLeavesInputUntouchedAndReducesLoss) {
  const GameSpec spec{GameKind::ConnectFour, 6, 4};
  const NetShape shape = architecture_for(spec);
  Rng init(2);
  const Model start(shape, init);
  const Model copy = start;
  Rng data(3);
  std::vector<TrainingExample> examples;
  for (int i = 0; i < 64; ++i) examples.push_back(random_example(shape, data));
  Rng train_rng(4);
  const TrainResult r = train(start, examples, {5, 16, 1e-3, 0.0}, train_rng);
  EXPECT_TRUE(start == copy);
  ASSERT_EQ(r.epoch_losses.size(), 5u);
  EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
}

TEST(Network, TrainingOnEmptyBufferFails) {
  const Model m(architecture_for({GameKind::Gobang, 6, 4}));
  ReplayBuffer buffer(3);
  Rng rng(1);
  EXPECT_THROW(train(m, buffer, {}, rng), TrainingError);
}

TEST(Network, TrainingIsDeterministic) {
  const GameSpec spec{GameKind::Gobang, 4, 3};
  const NetShape shape = architecture_for(spec);
  Rng init(2);
  const Model start(shape, init);
  Rng data(3);
  std::vector<TrainingExample> examples;
  for (int i = 0; i < 20; ++i) examples.push_back(random_example(shape, data));
  Rng a(9), b(9);
  EXPECT_TRUE(train(start, examples, {2, 8, 1e-3, 0.3}, a).model == train(start, examples, {2, 8, 1e-3, 0.3}, b).model);
}
