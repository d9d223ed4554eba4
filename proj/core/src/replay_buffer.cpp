#include "warmstart/replay_buffer.hpp"

#include <algorithm>
#include <stdexcept>

namespace warmstart {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("replay buffer capacity must be >= 1");
}

void ReplayBuffer::append(std::vector<TrainingExample> iteration_examples) {
  batches_.push_back(std::move(iteration_examples));
  while (static_cast<int>(batches_.size()) > capacity_) batches_.pop_front();
}

std::size_t ReplayBuffer::example_count() const {
  std::size_t total = 0;
  for (const auto& b : batches_) total += b.size();
  return total;
}

std::vector<const TrainingExample*> ReplayBuffer::sample(Rng& rng) const {
  std::vector<const TrainingExample*> all;
  all.reserve(example_count());
  for (const auto& b : batches_)
    for (const auto& ex : b) all.push_back(&ex);
  for (std::size_t i = all.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)));
    std::swap(all[i - 1], all[j]);
  }
  return all;
}

}  // namespace warmstart
