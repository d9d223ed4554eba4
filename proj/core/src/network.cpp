#include "warmstart/network.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "warmstart/errors.hpp"
#include "warmstart/replay_buffer.hpp"

namespace warmstart {
namespace {

constexpr double kLogFloor = 1e-12;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using ConstMap = Eigen::Map<const Mat<T>>;
template <class T>
using MutMap = Eigen::Map<Mat<T>>;

/// 3x3, stride 1, zero padding. Input (channels x batch*cells), output (channels*9 x batch*cells).
template <class T>
Mat<T> im2col(const Mat<T>& in, int n) {
  const int cells = n * n;
  const int channels = static_cast<int>(in.rows());
  const int columns = static_cast<int>(in.cols());
  Mat<T> out = Mat<T>::Zero(channels * 9, columns);
  for (int col = 0; col < columns; ++col) {
    const int base = col - col % cells;
    const int p = col % cells, r = p / n, c = p % n;
    for (int k = 0; k < 9; ++k) {
      const int rr = r + k / 3 - 1, cc = c + k % 3 - 1;
      if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
      const int src = base + rr * n + cc;
      for (int ch = 0; ch < channels; ++ch) out(ch * 9 + k, col) = in(ch, src);
    }
  }
  return out;
}

template <class T>
Mat<T> col2im(const Mat<T>& cols, int channels, int n) {
  const int cells = n * n;
  const int columns = static_cast<int>(cols.cols());
  Mat<T> out = Mat<T>::Zero(channels, columns);
  for (int col = 0; col < columns; ++col) {
    const int base = col - col % cells;
    const int p = col % cells, r = p / n, c = p % n;
    for (int k = 0; k < 9; ++k) {
      const int rr = r + k / 3 - 1, cc = c + k % 3 - 1;
      if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
      const int dst = base + rr * n + cc;
      for (int ch = 0; ch < channels; ++ch) out(ch, dst) += cols(ch * 9 + k, col);
    }
  }
  return out;
}

// (channels x batch*cells) <-> (channels*cells x batch)
template <class T>
Mat<T> flatten(const Mat<T>& a, int cells, int batch) {
  const int channels = static_cast<int>(a.rows());
  Mat<T> out(channels * cells, batch);
  for (int b = 0; b < batch; ++b)
    for (int ch = 0; ch < channels; ++ch)
      for (int p = 0; p < cells; ++p) out(ch * cells + p, b) = a(ch, b * cells + p);
  return out;
}

template <class T>
Mat<T> unflatten(const Mat<T>& f, int channels, int cells, int batch) {
  Mat<T> out(channels, batch * cells);
  for (int b = 0; b < batch; ++b)
    for (int ch = 0; ch < channels; ++ch)
      for (int p = 0; p < cells; ++p) out(ch, b * cells + p) = f(ch * cells + p, b);
  return out;
}

template <class T>
void softmax_columns(Mat<T>& logits) {
  for (Eigen::Index b = 0; b < logits.cols(); ++b) {
    auto col = logits.col(b);
    const T mx = col.maxCoeff();
    col = (col.array() - mx).exp();
    col /= col.sum();
  }
}

template <class T>
struct ForwardCache {
  std::vector<Mat<T>> conv_cols;   // im2col inputs per conv layer
  std::vector<Mat<T>> conv_pre;    // pre-activations per conv layer
  std::vector<Mat<T>> dense_in;    // inputs per dense layer
  std::vector<Mat<T>> dense_pre;   // pre-activations per dense layer
  std::vector<Mat<T>> dense_mask;  // dropout scale per dense layer (empty when off)
  Mat<T> hidden;                   // input to both heads
  Mat<T> policy;                   // softmax probabilities (actions x batch)
  Mat<T> value;                    // tanh outputs (1 x batch)
};

}  // namespace

std::string NetShape::describe() const {
  std::ostringstream os;
  os << "n=" << board_size << ";a=" << action_count << ";conv=" << conv_layers << "x" << channels
     << ";dense=" << dense_layers << "x" << hidden << ";heads=softmax,tanh";
  return os.str();
}

std::uint64_t NetShape::hash() const { return tag_of(describe()); }

NetShape architecture_for(const GameSpec& spec) {
  NetShape s;
  s.board_size = spec.board_size;
  s.action_count = spec.action_count();
  return s;
}

template <class T>
void PolicyValueNet<T>::layout() {
  const auto& s = shape_;
  if (s.board_size < 1 || s.action_count < 1 || s.conv_layers < 0 || s.channels < 1 || s.dense_layers < 0 ||
      s.hidden < 1)
    throw std::invalid_argument("invalid network shape " + s.describe());
  tensors_.clear();
  std::size_t offset = 0;
  auto add = [&](std::string name, int rows, int cols) {
    tensors_.push_back({std::move(name), offset, rows, cols});
    offset += static_cast<std::size_t>(rows) * cols;
  };
  const int cells = s.board_size * s.board_size;
  int in_ch = 1;
  for (int l = 0; l < s.conv_layers; ++l) {
    add("conv" + std::to_string(l) + ".weight", s.channels, in_ch * 9);
    add("conv" + std::to_string(l) + ".bias", s.channels, 1);
    in_ch = s.channels;
  }
  int width = in_ch * cells;
  for (int l = 0; l < s.dense_layers; ++l) {
    add("dense" + std::to_string(l) + ".weight", s.hidden, width);
    add("dense" + std::to_string(l) + ".bias", s.hidden, 1);
    width = s.hidden;
  }
  add("policy.weight", s.action_count, width);
  add("policy.bias", s.action_count, 1);
  add("value.weight", 1, width);
  add("value.bias", 1, 1);
  params_.assign(offset, T(0));
}

template <class T>
PolicyValueNet<T>::PolicyValueNet(NetShape shape) : shape_(shape) {
  layout();
}

template <class T>
PolicyValueNet<T>::PolicyValueNet(NetShape shape, Rng& rng) : shape_(shape) {
  layout();
  for (const auto& t : tensors_) {
    if (t.cols == 1) continue;  // biases stay zero
    const bool head = t.name.rfind("policy", 0) == 0 || t.name.rfind("value", 0) == 0;
    const double stddev = std::sqrt((head ? 1.0 : 2.0) / t.cols);
    for (std::size_t i = 0; i < t.size(); ++i) params_[t.offset + i] = static_cast<T>(rng.normal(0.0, stddev));
  }
}

namespace {

template <class T>
ForwardCache<T> forward(const NetShape& s, const std::vector<TensorInfo>& tensors, const std::vector<T>& params,
                        const Mat<T>& input, double dropout, Rng* rng) {
  const int n = s.board_size, cells = n * n;
  const int batch = static_cast<int>(input.cols()) / cells;
  auto tensor = [&](std::size_t idx) {
    const auto& t = tensors[idx];
    return ConstMap<T>(params.data() + t.offset, t.rows, t.cols);
  };
  ForwardCache<T> cache;
  std::size_t idx = 0;
  Mat<T> act = input;
  for (int l = 0; l < s.conv_layers; ++l, idx += 2) {
    cache.conv_cols.push_back(im2col<T>(act, n));
    Mat<T> pre = tensor(idx) * cache.conv_cols.back();
    pre.colwise() += Vec<T>(tensor(idx + 1));
    act = pre.cwiseMax(T(0));
    cache.conv_pre.push_back(std::move(pre));
  }
  act = flatten<T>(act, cells, batch);
  const bool drop = dropout > 0.0 && rng != nullptr;
  for (int l = 0; l < s.dense_layers; ++l, idx += 2) {
    cache.dense_in.push_back(act);
    Mat<T> pre = tensor(idx) * act;
    pre.colwise() += Vec<T>(tensor(idx + 1));
    act = pre.cwiseMax(T(0));
    cache.dense_pre.push_back(std::move(pre));
    Mat<T> mask;
    if (drop) {
      mask.resize(act.rows(), act.cols());
      const T keep_scale = static_cast<T>(1.0 / (1.0 - dropout));
      for (Eigen::Index j = 0; j < mask.cols(); ++j)
        for (Eigen::Index i = 0; i < mask.rows(); ++i) mask(i, j) = rng->bernoulli(dropout) ? T(0) : keep_scale;
      act = act.cwiseProduct(mask);
    }
    cache.dense_mask.push_back(std::move(mask));
  }
  cache.hidden = act;
  cache.policy = tensor(idx) * act;
  cache.policy.colwise() += Vec<T>(tensor(idx + 1));
  softmax_columns<T>(cache.policy);
  cache.value = tensor(idx + 2) * act;
  cache.value.array() += tensor(idx + 3)(0, 0);
  cache.value = cache.value.array().tanh().matrix();
  return cache;
}

}  // namespace

template <class T>
Prediction PolicyValueNet<T>::predict(std::span<const float> state) const {
  const int cells = shape_.board_size * shape_.board_size;
  if (static_cast<int>(state.size()) != cells)
    throw std::invalid_argument("predict: state has " + std::to_string(state.size()) + " cells, network expects " +
                                std::to_string(cells));
  Mat<T> input(1, cells);
  for (int i = 0; i < cells; ++i) input(0, i) = static_cast<T>(state[i]);
  const auto cache = forward<T>(shape_, tensors_, params_, input, 0.0, nullptr);
  Prediction pred;
  pred.policy.resize(shape_.action_count);
  for (int a = 0; a < shape_.action_count; ++a) pred.policy[a] = static_cast<float>(cache.policy(a, 0));
  pred.value = static_cast<float>(cache.value(0, 0));
  return pred;
}

template <class T>
T PolicyValueNet<T>::loss_and_gradient(std::span<const TrainingExample* const> batch, double dropout, Rng* rng,
                                       std::vector<T>* gradient) const {
  const auto& s = shape_;
  const int n = s.board_size, cells = n * n, bsz = static_cast<int>(batch.size());
  if (bsz == 0) throw std::invalid_argument("loss_and_gradient: empty batch");
  Mat<T> input(1, bsz * cells);
  Mat<T> target_pi(s.action_count, bsz);
  Mat<T> target_z(1, bsz);
  for (int b = 0; b < bsz; ++b) {
    const auto& ex = *batch[b];
    if (static_cast<int>(ex.state.size()) != cells || static_cast<int>(ex.policy.size()) != s.action_count)
      throw std::invalid_argument("training example does not match the network shape");
    for (int p = 0; p < cells; ++p) input(0, b * cells + p) = static_cast<T>(ex.state[p]);
    for (int a = 0; a < s.action_count; ++a) target_pi(a, b) = static_cast<T>(ex.policy[a]);
    target_z(0, b) = static_cast<T>(ex.z);
  }
  const auto cache = forward<T>(s, tensors_, params_, input, dropout, rng);

  T total = 0;
  for (int b = 0; b < bsz; ++b) {
    const T dv = cache.value(0, b) - target_z(0, b);
    T ce = 0;
    for (int a = 0; a < s.action_count; ++a)
      if (target_pi(a, b) != T(0))
        ce -= target_pi(a, b) * std::log(std::max(cache.policy(a, b), static_cast<T>(kLogFloor)));
    total += dv * dv + ce;
  }
  const T mean_loss = total / bsz;
  if (!gradient) return mean_loss;

  gradient->assign(params_.size(), T(0));
  auto grad = [&](std::size_t idx) {
    const auto& t = tensors_[idx];
    return MutMap<T>(gradient->data() + t.offset, t.rows, t.cols);
  };
  auto tensor = [&](std::size_t idx) {
    const auto& t = tensors_[idx];
    return ConstMap<T>(params_.data() + t.offset, t.rows, t.cols);
  };
  const T inv_b = T(1) / bsz;

  // Heads.
  Mat<T> d_logits(s.action_count, bsz);
  for (int b = 0; b < bsz; ++b) {
    const T pi_mass = target_pi.col(b).sum();
    d_logits.col(b) = (cache.policy.col(b) * pi_mass - target_pi.col(b)) * inv_b;
  }
  Mat<T> d_vpre(1, bsz);
  for (int b = 0; b < bsz; ++b) {
    const T v = cache.value(0, b);
    d_vpre(0, b) = T(2) * (v - target_z(0, b)) * (T(1) - v * v) * inv_b;
  }
  std::size_t head = 2 * static_cast<std::size_t>(s.conv_layers + s.dense_layers);
  grad(head) = d_logits * cache.hidden.transpose();
  grad(head + 1) = d_logits.rowwise().sum();
  grad(head + 2) = d_vpre * cache.hidden.transpose();
  grad(head + 3)(0, 0) = d_vpre.sum();
  Mat<T> d_act = tensor(head).transpose() * d_logits + tensor(head + 2).transpose() * d_vpre;

  // Dense layers, last to first.
  for (int l = s.dense_layers - 1; l >= 0; --l) {
    const std::size_t idx = 2 * static_cast<std::size_t>(s.conv_layers + l);
    if (cache.dense_mask[l].size() > 0) d_act = d_act.cwiseProduct(cache.dense_mask[l]);
    Mat<T> d_pre = d_act.cwiseProduct((cache.dense_pre[l].array() > T(0)).template cast<T>().matrix());
    grad(idx) = d_pre * cache.dense_in[l].transpose();
    grad(idx + 1) = d_pre.rowwise().sum();
    d_act = tensor(idx).transpose() * d_pre;
  }

  // Convolutions, last to first.
  if (s.conv_layers > 0) d_act = unflatten<T>(d_act, s.channels, cells, bsz);
  for (int l = s.conv_layers - 1; l >= 0; --l) {
    const std::size_t idx = 2 * static_cast<std::size_t>(l);
    Mat<T> d_pre = d_act.cwiseProduct((cache.conv_pre[l].array() > T(0)).template cast<T>().matrix());
    grad(idx) = d_pre * cache.conv_cols[l].transpose();
    grad(idx + 1) = d_pre.rowwise().sum();
    if (l > 0) d_act = col2im<T>(tensor(idx).transpose() * d_pre, s.channels, n);
  }
  return mean_loss;
}

template class PolicyValueNet<float>;
template class PolicyValueNet<double>;

double loss(const Prediction& pred, const TrainingExample& target) {
  if (pred.policy.size() != target.policy.size()) throw std::invalid_argument("loss: policy sizes differ");
  const double dv = static_cast<double>(pred.value) - target.z;
  double ce = 0.0;
  for (std::size_t a = 0; a < pred.policy.size(); ++a) {
    if (target.policy[a] == 0.0f) continue;
    ce -= target.policy[a] * std::log(std::max(static_cast<double>(pred.policy[a]), kLogFloor));
  }
  return dv * dv + ce;
}

TrainResult train(const Model& model, std::span<const TrainingExample> examples, const TrainConfig& cfg, Rng& rng) {
  ReplayBuffer buffer(1);
  buffer.append(std::vector<TrainingExample>(examples.begin(), examples.end()));
  return train(model, buffer, cfg, rng);
}

TrainResult train(const Model& model, const ReplayBuffer& buffer, const TrainConfig& cfg, Rng& rng) {
  if (buffer.empty()) throw TrainingError("cannot train on an empty replay buffer");
  if (cfg.batch_size < 1) throw TrainingError("batch size must be positive");
  TrainResult result{model, {}};
  auto params = result.model.parameters();
  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0);
  std::vector<float> gradient;
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = buffer.sample(rng);
    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t len = std::min<std::size_t>(cfg.batch_size, order.size() - start);
      std::span<const TrainingExample* const> batch(order.data() + start, len);
      epoch_loss += result.model.loss_and_gradient(batch, cfg.dropout, &rng, &gradient);
      ++batches;
      ++step;
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = gradient[i];
        m[i] = beta1 * m[i] + (1.0 - beta1) * g;
        v[i] = beta2 * v[i] + (1.0 - beta2) * g * g;
        const double update = cfg.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
        params[i] = static_cast<float>(params[i] - update);
      }
    }
    result.epoch_losses.push_back(epoch_loss / std::max(batches, 1));
  }
  return result;
}

}  // namespace warmstart
