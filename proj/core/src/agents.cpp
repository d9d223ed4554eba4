#include "warmstart/agents.hpp"

#include <charconv>

#include "warmstart/checkpoint.hpp"
#include "warmstart/enhancements.hpp"
#include "warmstart/errors.hpp"

namespace warmstart {
namespace {

int parse_count(std::string_view text, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || v < 1)
    throw ConfigError("agent '" + std::string(whole) + "': expected a positive count after ':'");
  return v;
}

}  // namespace

AgentSpec parse_agent_spec(std::string_view text, int default_simulations) {
  AgentSpec spec;
  spec.name = std::string(text);
  spec.simulations = default_simulations;
  if (spec.name.find(',') != std::string::npos) throw ConfigError("agent names may not contain ','");
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "net") {
    if (tail.empty()) throw ConfigError("agent 'net' needs a checkpoint path: net:<path>");
    spec.kind = AgentKind::NeuralMcts;
    spec.checkpoint = std::string(tail);
    return spec;
  }
  if (head == "random") {
    spec.kind = AgentKind::Random;
  } else if (head == "mcts") {
    spec.kind = AgentKind::MctsRollout;
  } else if (head == "rave") {
    spec.kind = AgentKind::RaveRollout;
  } else if (head == "rhea") {
    spec.kind = AgentKind::Rhea;
  } else {
    throw ConfigError("unknown agent '" + std::string(text) + "' (expected random, mcts, rave, rhea or net:<path>)");
  }
  if (!tail.empty()) spec.simulations = parse_count(tail, text);
  return spec;
}

Move RandomAgent::select_move(const GameState& s, Rng& rng) {
  const auto legal = s.legal_moves();
  return legal[rng.uniform_int(static_cast<int>(legal.size()))];
}

SearchAgent::SearchAgent(SearchConfig config, SearchStrategy strategy, Evaluator evaluator, int sampled_plies)
    : mcts_(config, strategy, std::move(evaluator)), sampled_plies_(sampled_plies) {}

Move SearchAgent::select_move(const GameState& s, Rng& rng) {
  const auto pi = mcts_.search(s, rng);
  if (s.plies() < sampled_plies_) return rng.categorical(pi);
  return argmax(pi);
}

Move RheaAgent::select_move(const GameState& s, Rng& rng) { return choose_move(s, cfg_, rng); }

Evaluator network_evaluator(std::shared_ptr<const Model> model) {
  return [model = std::move(model)](const GameState& s) {
    const Prediction p = model->predict(encode_state(s));
    return Evaluation{p.policy, static_cast<double>(p.value)};
  };
}

std::unique_ptr<Agent> make_rollout_mcts(int simulations, double c, bool rave) {
  SearchStrategy strategy;
  strategy.leaf = LeafRule::Rollout;
  strategy.selection = rave ? SelectionRule::Rave : SelectionRule::Puct;
  strategy.equivalence = simulations;
  return std::make_unique<SearchAgent>(SearchConfig{simulations, c}, strategy, uniform_evaluator());
}

std::unique_ptr<Agent> make_neural_mcts(std::shared_ptr<const Model> model, int simulations, double c,
                                        int sampled_plies) {
  return std::make_unique<SearchAgent>(SearchConfig{simulations, c}, SearchStrategy{},
                                       network_evaluator(std::move(model)), sampled_plies);
}

AgentFactory::AgentFactory(AgentSpec spec, const GameSpec& game) : spec_(std::move(spec)) {
  if (spec_.kind == AgentKind::NeuralMcts)
    model_ = std::make_shared<const Model>(load_checkpoint(spec_.checkpoint, game));
}

AgentFactory::AgentFactory(AgentSpec spec, std::shared_ptr<const Model> model)
    : spec_(std::move(spec)), model_(std::move(model)) {
  spec_.kind = AgentKind::NeuralMcts;
}

std::unique_ptr<Agent> AgentFactory::create() const {
  switch (spec_.kind) {
    case AgentKind::Random: return std::make_unique<RandomAgent>();
    case AgentKind::MctsRollout: return make_rollout_mcts(spec_.simulations, spec_.c_puct, false);
    case AgentKind::RaveRollout: return make_rollout_mcts(spec_.simulations, spec_.c_puct, true);
    case AgentKind::Rhea: {
      RheaConfig cfg;
      cfg.rollout_budget = spec_.simulations;
      return std::make_unique<RheaAgent>(cfg);
    }
    case AgentKind::NeuralMcts:
      return make_neural_mcts(model_, spec_.simulations, spec_.c_puct, spec_.opening_plies);
  }
  return nullptr;
}

}  // namespace warmstart
