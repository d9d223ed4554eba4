#pragma once

#include <span>
#include <vector>

#include "warmstart/game.hpp"
#include "warmstart/rng.hpp"

namespace warmstart {

struct RheaConfig {
  int population = 10;
  double mutation_rate = 0.2;
  int horizon = 10;
  int rollouts_per_individual = 2;  // n
  int rollout_budget = 100;

  /// Throws ConfigError unless population >= 2 and budget >= population * n.
  void validate() const;
};

/// Genes are integers in [0, move-space size); a gene is played as
/// legal[gene % legal.size()] over the sorted legal-move list.
using ActionSequence = std::vector<int>;

struct Individual {
  ActionSequence genes;
  double fitness = 0.0;
  int rollouts_used = 0;
};

/// Result of one playout: Q in {+1, 0, -1} for the mover of the start
/// state, and the number of plies until the game ended.
struct PlayoutResult {
  double q = 0.0;
  int steps = 0;
};

Move remap_gene(int gene, const std::vector<Move>& legal);

/// Own moves follow the genes, opponent moves and post-horizon moves are random.
PlayoutResult sequence_playout(const ActionSequence& genes, const GameState& s, Rng& rng);
/// (sum_i Q_i / h_i) / n, each playout divided by its own length.
double fitness_of(std::span<const PlayoutResult> playouts);
double evaluate_fitness(const ActionSequence& genes, const GameState& s, const RheaConfig& cfg, Rng& rng);

ActionSequence random_sequence(int length, int gene_range, Rng& rng);
/// Each gene independently resampled in [0, gene_range) with probability `rate`.
ActionSequence mutate(const ActionSequence& genes, double rate, int gene_range, Rng& rng);

struct RheaStats {
  int rollouts = 0;
  int evaluations = 0;
  int final_population = 0;
};

/// (population + 1) truncation evolution under the rollout budget; returns
/// the first action of the fittest sequence.
Move choose_move(const GameState& s, const RheaConfig& cfg, Rng& rng, RheaStats* stats = nullptr);

}  // namespace warmstart
