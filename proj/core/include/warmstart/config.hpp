#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "warmstart/enhancements.hpp"
#include "warmstart/game.hpp"
#include "warmstart/mcts.hpp"
#include "warmstart/network.hpp"

namespace warmstart {

/// Self-play hyperparameters with their default setting.
struct PipelineConfig {
  GameSpec game{GameKind::Gobang, 6, 4};
  int iterations = 100;           // I
  int warm_iterations = 5;        // I'
  int episodes = 50;              // E
  int temperature_moves = 15;     // T'
  int simulations = 100;          // m
  double c_puct = 1.0;            // c
  int retrain_iterations = 20;    // rs
  int epochs = 10;                // ep
  int batch_size = 64;            // bs
  double learning_rate = 0.005;   // lr
  double dropout = 0.3;           // d
  int arena_games = 40;           // n
  double update_threshold = 0.6;  // u
  Enhancement enhancement = Enhancement::Baseline;
  std::uint64_t seed = 0;
  bool symmetry = false;
  std::optional<double> equivalence;  // defaults to m
  int opening_plies = 2;              // sampled plies at the start of arena/evaluation games

  double rave_equivalence() const { return equivalence.value_or(static_cast<double>(simulations)); }
  SearchConfig search() const { return {simulations, c_puct}; }
  TrainConfig train() const { return {epochs, batch_size, learning_rate, dropout}; }
};

struct RunConfig {
  PipelineConfig pipeline;
  int workers = 1;
  std::string output_dir = "runs/default";
};

/// One configuration key: its file/flag name, help text, and whether it
/// takes part in the snapshot hash (workers and output_dir do not).
struct ConfigKey {
  std::string name;
  std::string description;
  bool hashed = true;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<ConfigKey>& config_keys();

/// Throws ConfigError naming the offending key and its valid range.
void validate(const RunConfig& cfg);

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Defaults, then `key=value` lines from `file` ('#' comments), then
/// `overrides`. Unknown keys and malformed values raise ConfigError.
RunConfig parse_config(const std::optional<std::filesystem::path>& file, const ConfigOverrides& overrides = {});
RunConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides = {});

/// `key=value` lines for every key in table order, closed by `config_hash=<hex>`.
std::string config_snapshot(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);
/// Reads the hash line from a snapshot file. Throws ConfigError when absent.
std::uint64_t read_snapshot_hash(const std::filesystem::path& snapshot);

std::string format_double(double v);

}  // namespace warmstart
