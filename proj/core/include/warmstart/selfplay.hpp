#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "warmstart/config.hpp"
#include "warmstart/match.hpp"
#include "warmstart/network.hpp"
#include "warmstart/replay_buffer.hpp"

namespace warmstart {

/// One self-play game of `model` against itself under `strategy`. Moves
/// t < T' are sampled from pi, later moves take argmax(pi). Each position
/// yields one example labelled with the final result from its mover's view
/// (eight or two per position with symmetry augmentation).
std::vector<TrainingExample> run_episode(const SearchStrategy& strategy, std::shared_ptr<const Model> model,
                                         const PipelineConfig& cfg, Rng& rng);

struct ArenaResult {
  int wins = 0;  // candidate
  int draws = 0;
  int losses = 0;
  bool accepted = false;
  MatchRecord record;
};

/// Strictly more than fraction `u` of the decisive games; no decisive game rejects.
bool arena_accepts(int wins, int losses, double u);

/// n games of plain neural MCTS, candidate first in even games.
ArenaResult arena_compare(std::shared_ptr<const Model> candidate, std::shared_ptr<const Model> incumbent,
                          const PipelineConfig& cfg, std::uint64_t seed, int workers = 1);

struct IterationReport {
  int iteration = 0;
  std::size_t examples = 0;
  std::vector<double> losses;  // per epoch
  double mean_loss = 0.0;      // final epoch
  int arena_wins = 0;
  int arena_draws = 0;
  int arena_losses = 0;
  bool accepted = false;
  double seconds = 0.0;
};

/// In-memory pipeline state: incumbent model and replay buffer.
class Pipeline {
 public:
  explicit Pipeline(RunConfig cfg);
  Pipeline(RunConfig cfg, Model incumbent, ReplayBuffer buffer);

  /// Self-play (warm-start searcher while i < I'), training, arena gating.
  /// `after_selfplay` sees the new examples before training starts.
  IterationReport run_iteration(int i,
                                const std::function<void(const std::vector<TrainingExample>&)>& after_selfplay = {});

  const RunConfig& config() const { return cfg_; }
  const Model& incumbent() const { return *incumbent_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  SearchStrategy strategy_for(int i) const;

 private:
  RunConfig cfg_;
  std::shared_ptr<const Model> incumbent_;
  ReplayBuffer buffer_;
};

struct TrainLoopOptions {
  /// Stop after this many iterations have run in this call.
  std::optional<int> max_new_iterations;
  std::function<void(const IterationReport&)> on_report;
};

struct TrainLoopResult {
  Model model;
  std::vector<IterationReport> reports;  // iterations run by this call
  int resumed_from = 0;                  // first iteration run by this call
};

/// Runs iterations until I are complete, persisting everything under
/// cfg.output_dir. An existing run directory is resumed when its config
/// hash matches and refused (ConfigError) otherwise.
TrainLoopResult train_loop(const RunConfig& cfg, const TrainLoopOptions& options = {});

std::filesystem::path checkpoint_path(const std::filesystem::path& run_dir, int iteration);
std::filesystem::path examples_path(const std::filesystem::path& run_dir, int iteration);

}  // namespace warmstart
