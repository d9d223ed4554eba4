#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "warmstart/game.hpp"
#include "warmstart/rng.hpp"

namespace warmstart {

/// Layer sizes of the policy/value network. Production networks use
/// architecture_for(); smaller shapes exist for tests.
struct NetShape {
  int board_size = 6;
  int action_count = 36;
  int conv_layers = 2;
  int channels = 64;
  int dense_layers = 2;
  int hidden = 128;

  std::string describe() const;
  std::uint64_t hash() const;
  friend bool operator==(const NetShape&, const NetShape&) = default;
};

/// 3x3 convolutions (64 channels, ReLU) x2 -> dense 128 (ReLU, dropout) x2 -> heads.
NetShape architecture_for(const GameSpec& spec);

struct Prediction {
  std::vector<float> policy;  // softmax over the full move space
  float value = 0.0f;         // tanh, in [-1, 1]
};

struct TrainingExample {
  Encoding state;
  std::vector<float> policy;
  float z = 0.0f;
};

struct TrainConfig {
  int epochs = 10;
  int batch_size = 64;
  double learning_rate = 0.005;
  double dropout = 0.3;
};

struct TensorInfo {
  std::string name;
  std::size_t offset = 0;
  int rows = 0;
  int cols = 0;
  std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
};

/// Two-headed convolutional network with all parameters in one flat buffer
/// (column-major tensors in declaration order).
template <class T>
class PolicyValueNet {
 public:
  /// All parameters zero.
  explicit PolicyValueNet(NetShape shape);
  /// He-normal weights, zero biases.
  PolicyValueNet(NetShape shape, Rng& rng);

  const NetShape& shape() const { return shape_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }
  std::span<const T> parameters() const { return params_; }
  std::span<T> parameters() { return params_; }

  /// Inference (dropout off). Throws std::invalid_argument on a size mismatch.
  Prediction predict(std::span<const float> state) const;

  /// Mean per-example loss over `batch`. Dropout masks are drawn from `rng`
  /// when dropout > 0. When `gradient` is non-null it receives dLoss/dParams.
  T loss_and_gradient(std::span<const TrainingExample* const> batch, double dropout, Rng* rng,
                      std::vector<T>* gradient) const;

  template <class U>
  PolicyValueNet<U> cast() const {
    PolicyValueNet<U> out(shape_);
    auto dst = out.parameters();
    for (std::size_t i = 0; i < params_.size(); ++i) dst[i] = static_cast<U>(params_[i]);
    return out;
  }

  friend bool operator==(const PolicyValueNet& a, const PolicyValueNet& b) {
    return a.shape_ == b.shape_ && a.params_ == b.params_;
  }

 private:
  void layout();

  NetShape shape_;
  std::vector<TensorInfo> tensors_;
  std::vector<T> params_;
};

using Model = PolicyValueNet<float>;

/// (v - z)^2 - sum_a pi(a) log max(p(a), 1e-12)
double loss(const Prediction& pred, const TrainingExample& target);

/// Adam updates over shuffled minibatches for cfg.epochs epochs.
struct TrainResult {
  Model model;
  std::vector<double> epoch_losses;
};
class ReplayBuffer;
/// Throws TrainingError when the buffer holds no examples. The input model is not modified.
TrainResult train(const Model& model, const ReplayBuffer& buffer, const TrainConfig& cfg, Rng& rng);
TrainResult train(const Model& model, std::span<const TrainingExample> examples, const TrainConfig& cfg,
                  Rng& rng);

}  // namespace warmstart
