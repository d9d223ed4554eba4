#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace warmstart {

/// Seeded random stream; components take independent streams from
/// Rng::derive(master_seed, {tags...}).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

  /// Uniform integer in [0, n). n must be positive.
  int uniform_int(int n);
  double uniform01();
  double normal(double mean, double stddev);
  bool bernoulli(double p);

  /// Index drawn from an unnormalized non-negative weight vector.
  int categorical(std::span<const double> weights);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t tag_of(std::string_view name);

}  // namespace warmstart
