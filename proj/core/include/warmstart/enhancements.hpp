#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "warmstart/game.hpp"
#include "warmstart/mcts.hpp"
#include "warmstart/rng.hpp"

namespace warmstart {

/// Warm-start search enhancements, active only while iteration < I'.
enum class Enhancement { Baseline, Rollout, Rave, RoRa, WRo, WRoRa };

std::string_view to_string(Enhancement e);
/// Case-insensitive; throws ConfigError on an unknown name.
Enhancement parse_enhancement(std::string_view name);
std::vector<Enhancement> all_enhancements();

struct RolloutResult {
  double value = 0.0;       // {+1, 0, -1} from the starting mover's perspective
  std::vector<Move> moves;  // actions played until termination
};

/// Uniformly random playout to the end of the game.
RolloutResult random_rollout(const GameState& s, Rng& rng);

/// sqrt(equivalence / (3 * N_total + equivalence))
double rave_beta(int n_total, double equivalence);

/// Inputs of the RAVE-blended selection value for one action.
struct RaveInputs {
  double q = 0.0;
  int n = 0;
  int n_total = 0;
  double q_rave = 0.0;
  int n_rave = 0;
  int n_rave_total = 0;
  double prior = 0.0;
};

/// (1 - beta) * U + beta * U_rave, where both terms use the P-UCT form and
/// beta = rave_beta(n_total, equivalence).
double uct_rave_value(const RaveInputs& in, double c, double equivalence);

/// 1 - i / I'. Throws std::invalid_argument unless 0 <= i <= I' and I' >= 1.
double schedule_weight(int iteration, int iprime);

/// Leaf value for the given kind. `rollout_value` is ignored by Baseline and Rave.
double leaf_value(Enhancement kind, double network_value, double rollout_value, double weight);

/// One visited state for AMAF crediting: its legal moves, the actions that
/// followed it in the simulation (starting with the one taken there) and the
/// simulation value from its mover's perspective.
struct AmafEntry {
  NodeStats* node;
  std::span<const Move> tail;
  double value;
};

/// Credits every legal action at its first occurrence in the entry's tail,
/// scored from the side of the player who played it (the value is negated
/// at odd offsets).
/// Returns the number of (state, action) pairs updated; when `updated` is
/// given, appends (entry index, action) for every credited pair.
int amaf_backup(std::span<const AmafEntry> entries,
                std::vector<std::pair<int, Move>>* updated = nullptr);

/// Strategy for self-play iteration `iteration`. For iteration >= I' every
/// kind collapses to the Baseline strategy.
SearchStrategy make_enhanced_searcher(Enhancement kind, int iteration, int iprime, double equivalence);

}  // namespace warmstart
