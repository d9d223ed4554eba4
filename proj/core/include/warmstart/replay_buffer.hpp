#pragma once

#include <deque>
#include <vector>

#include "warmstart/network.hpp"
#include "warmstart/rng.hpp"

namespace warmstart {

/// Examples of the last `capacity` iterations; the oldest batch is evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity = 20);

  void append(std::vector<TrainingExample> iteration_examples);
  /// Every retained example in a uniformly shuffled order.
  std::vector<const TrainingExample*> sample(Rng& rng) const;

  int capacity() const { return capacity_; }
  std::size_t batches() const { return batches_.size(); }
  std::size_t example_count() const;
  bool empty() const { return example_count() == 0; }
  const std::deque<std::vector<TrainingExample>>& contents() const { return batches_; }

 private:
  int capacity_;
  std::deque<std::vector<TrainingExample>> batches_;
};

inline ReplayBuffer& buffer_append(ReplayBuffer& buffer, std::vector<TrainingExample> examples) {
  buffer.append(std::move(examples));
  return buffer;
}
inline std::vector<const TrainingExample*> buffer_sample(const ReplayBuffer& buffer, Rng& rng) {
  return buffer.sample(rng);
}

}  // namespace warmstart
