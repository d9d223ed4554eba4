#pragma once

#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "warmstart/game.hpp"
#include "warmstart/rng.hpp"

namespace warmstart {

struct SearchConfig {
  int simulations = 100;  // m
  double c_puct = 1.0;    // c
};

/// Prior and value for a non-terminal state, value from the mover's perspective.
/// `prior` spans the whole move space; search masks and renormalizes it.
struct Evaluation {
  std::vector<float> prior;
  double value = 0.0;
};
using Evaluator = std::function<Evaluation(const GameState&)>;

/// Uniform prior and zero value; the evaluator of network-free searchers.
Evaluator uniform_evaluator();

enum class SelectionRule { Puct, Rave };
/// Network: evaluator value. Rollout: random rollout result.
/// Mixed: (1 - weight) * network + weight * rollout.
enum class LeafRule { Network, Rollout, Mixed };

/// How one search selects, evaluates and extracts its policy. Built by
/// make_enhanced_searcher(); the default is plain network-guided MCTS.
struct SearchStrategy {
  SelectionRule selection = SelectionRule::Puct;
  LeafRule leaf = LeafRule::Network;
  double rollout_weight = 0.0;
  double equivalence = 100.0;

  bool uses_rave() const { return selection == SelectionRule::Rave; }
  friend bool operator==(const SearchStrategy&, const SearchStrategy&) = default;
};

/// Per-state statistics. Slot k refers to moves[k].
struct NodeStats {
  std::vector<Move> moves;
  std::vector<double> prior;
  std::vector<double> q;
  std::vector<int> n;
  int total_visits = 0;

  std::vector<double> q_rave;
  std::vector<int> n_rave;
  int total_rave_visits = 0;

  std::vector<int> slot_by_move;  // move-space index -> slot, -1 when illegal

  /// Masks `full_prior` to `legal` and renormalizes; uniform when no legal mass.
  static NodeStats create(std::vector<Move> legal, std::span<const float> full_prior);
  int slot_of(Move m) const {
    return m >= 0 && m < static_cast<int>(slot_by_move.size()) ? slot_by_move[m] : -1;
  }
};

struct SearchTree {
  std::unordered_map<std::string, NodeStats> nodes;
  void clear() { nodes.clear(); }
  std::size_t size() const { return nodes.size(); }
};

/// One edge on a simulation path: the node and the slot of the action taken.
struct PathStep {
  NodeStats* node;
  int slot;
};

/// Q + c * P * sqrt(N_total) / (N_a + 1)
double puct_value(double q, double prior, int n_total, int n_a, double c);

/// argmax over the node's legal moves, lowest index winning ties.
Move select_child(const NodeStats& stats, SelectionRule rule, double c, double equivalence);

/// Incremental-mean backup. The last step is credited `value`, earlier steps
/// alternate sign once per ply.
void backup(std::span<const PathStep> path, double value);

/// Shift-normalizes values over the node's moves into a move-space policy:
/// pi(a) = (x(a) - min x) / sum (x - min x), uniform when all equal.
std::vector<double> normalize_to_policy(const NodeStats& stats, std::span<const double> values,
                                        int action_count);

/// Recorded state of one completed simulation (for instrumentation).
struct SimulationTrace {
  std::vector<GameState> states;       // s_0 (root) .. s_L (leaf)
  std::vector<Move> actions;           // tree actions then rollout actions
  std::size_t tree_actions = 0;
  bool expanded = false;               // leaf was added to the tree
  double leaf_value = 0.0;             // from s_L's mover perspective
  std::vector<std::pair<int, Move>> rave_updates;  // (index into states, action)
};
using TraceObserver = std::function<void(const SimulationTrace&)>;

/// Neural MCTS: one tree per owner, m simulations per call, pi from Q
/// (or Q_rave under RAVE selection).
class Mcts {
 public:
  Mcts(SearchConfig config, SearchStrategy strategy, Evaluator evaluator);

  /// Runs exactly `simulations` simulations from `root` and returns pi over
  /// the move space. Throws std::invalid_argument on a terminal root.
  std::vector<double> search(const GameState& root, Rng& rng);

  SearchTree& tree() { return tree_; }
  const SearchTree& tree() const { return tree_; }
  void reset() { tree_.clear(); }
  const SearchConfig& config() const { return config_; }
  const SearchStrategy& strategy() const { return strategy_; }
  void set_observer(TraceObserver observer) { observer_ = std::move(observer); }

 private:
  void simulate(const GameState& root, Rng& rng);

  SearchConfig config_;
  SearchStrategy strategy_;
  Evaluator evaluator_;
  SearchTree tree_;
  TraceObserver observer_;
};

/// Convenience wrapper matching the search operation: runs on an existing tree.
std::vector<double> run_search(const GameState& s, const Evaluator& evaluator, const SearchConfig& cfg,
                               SearchTree& tree, Rng& rng, const SearchStrategy& strategy = {});

/// Index of the largest entry, lowest index on ties.
int argmax(std::span<const double> values);

}  // namespace warmstart
