#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "warmstart/game.hpp"
#include "warmstart/mcts.hpp"
#include "warmstart/network.hpp"
#include "warmstart/rhea.hpp"
#include "warmstart/rng.hpp"

namespace warmstart {

enum class AgentKind { Random, MctsRollout, RaveRollout, Rhea, NeuralMcts };

struct AgentSpec {
  AgentKind kind = AgentKind::Random;
  std::string name;        // unique id used in records and ratings
  int simulations = 100;   // simulations, or the RHEA rollout budget
  double c_puct = 1.0;
  std::string checkpoint;  // NeuralMcts only
  int opening_plies = 2;   // NeuralMcts: plies sampled from pi before playing argmax
};

/// "random", "mcts[:m]", "rave[:m]", "rhea[:budget]" or "net:<checkpoint>".
/// `default_simulations` applies when no count is given.
AgentSpec parse_agent_spec(std::string_view text, int default_simulations = 100);

class Agent {
 public:
  virtual ~Agent() = default;
  /// Agents keep per-game state (search trees); use one instance per game.
  virtual Move select_move(const GameState& s, Rng& rng) = 0;
};

class RandomAgent final : public Agent {
 public:
  Move select_move(const GameState& s, Rng& rng) override;
};

/// Search-based player; picks argmax(pi), or samples pi for the first
/// `sampled_plies` plies of the game.
class SearchAgent final : public Agent {
 public:
  SearchAgent(SearchConfig config, SearchStrategy strategy, Evaluator evaluator, int sampled_plies = 0);
  Move select_move(const GameState& s, Rng& rng) override;
  Mcts& mcts() { return mcts_; }

 private:
  Mcts mcts_;
  int sampled_plies_;
};

class RheaAgent final : public Agent {
 public:
  explicit RheaAgent(RheaConfig cfg) : cfg_(cfg) {}
  Move select_move(const GameState& s, Rng& rng) override;

 private:
  RheaConfig cfg_;
};

/// Prior and value from the network, the state encoded from the mover's view.
Evaluator network_evaluator(std::shared_ptr<const Model> model);

/// Network-free MCTS with uniform priors and random-rollout leaf values.
std::unique_ptr<Agent> make_rollout_mcts(int simulations, double c, bool rave);
/// Plain neural MCTS over a shared model.
std::unique_ptr<Agent> make_neural_mcts(std::shared_ptr<const Model> model, int simulations, double c,
                                        int sampled_plies);

/// Builds fresh agents for one spec; checkpoints are loaded (and checked
/// against the game) once, at construction.
class AgentFactory {
 public:
  AgentFactory(AgentSpec spec, const GameSpec& game);
  AgentFactory(AgentSpec spec, std::shared_ptr<const Model> model);

  std::unique_ptr<Agent> create() const;
  const AgentSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }

 private:
  AgentSpec spec_;
  std::shared_ptr<const Model> model_;
};

}  // namespace warmstart
