#include "warmstart/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace warmstart {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t tag_of(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t state = splitmix64(seed);
  for (std::uint64_t t : tags) state = splitmix64(state ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return Rng(state);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  std::uniform_int_distribution<int> dist(0, n - 1);
  return dist(engine_);
}

double Rng::uniform01() {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

double Rng::normal(double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

int Rng::categorical(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("categorical: weights sum to zero");
  double r = uniform01() * total;
  int last_positive = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    if (r < weights[i]) return last_positive;
    r -= weights[i];
  }
  return last_positive;
}

}  // namespace warmstart
