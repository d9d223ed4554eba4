#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "warmstart/game.hpp"
#include "warmstart/network.hpp"

namespace warmstart {

inline constexpr char kCheckpointMagic[8] = {'W', 'S', 'A', 'Z', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  GameSpec spec;
  Model model;
};

/// Layout: docs/checkpoint_format.md. All integers and floats little-endian.
void save_checkpoint(const std::filesystem::path& path, const GameSpec& spec, const Model& model);
/// Throws CorruptFileError on a bad magic/version, truncation or inconsistent hash.
Checkpoint read_checkpoint(const std::filesystem::path& path);
/// As read_checkpoint, additionally refusing a checkpoint whose game or
/// architecture differs from `expected`.
Model load_checkpoint(const std::filesystem::path& path, const GameSpec& expected);

/// Length-prefixed TrainingExample records.
void save_examples(const std::filesystem::path& path, std::span<const TrainingExample> examples);
std::vector<TrainingExample> load_examples(const std::filesystem::path& path);

}  // namespace warmstart
