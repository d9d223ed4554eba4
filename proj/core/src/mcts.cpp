#include "warmstart/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "warmstart/enhancements.hpp"

namespace warmstart {
namespace {

struct SearchContext {
  const SearchConfig& config;
  const SearchStrategy& strategy;
  const Evaluator& evaluator;
  SearchTree& tree;
  const TraceObserver* observer;
};

void simulate_once(SearchContext& ctx, const GameState& root, Rng& rng) {
  const bool rave = ctx.strategy.uses_rave();
  const bool record = rave || (ctx.observer && *ctx.observer);

  std::vector<PathStep> path;
  std::vector<Move> actions;
  std::vector<GameState> states;
  NodeStats* leaf_node = nullptr;
  double leaf_v = 0.0;

  GameState s = root;
  while (true) {
    if (record) states.push_back(s);
    if (s.terminal()) {
      leaf_v = s.outcome().value_for(s.to_move());
      break;
    }
    std::string key = s.key();
    auto it = ctx.tree.nodes.find(key);
    if (it == ctx.tree.nodes.end()) {
      Evaluation ev = ctx.evaluator(s);
      auto inserted = ctx.tree.nodes.emplace(std::move(key), NodeStats::create(s.legal_moves(), ev.prior));
      leaf_node = &inserted.first->second;
      double rollout_v = 0.0;
      if (ctx.strategy.leaf != LeafRule::Network) {
        RolloutResult rr = random_rollout(s, rng);
        rollout_v = rr.value;
        if (record) actions.insert(actions.end(), rr.moves.begin(), rr.moves.end());
      }
      switch (ctx.strategy.leaf) {
        case LeafRule::Network: leaf_v = ev.value; break;
        case LeafRule::Rollout: leaf_v = rollout_v; break;
        case LeafRule::Mixed:
          leaf_v = (1.0 - ctx.strategy.rollout_weight) * ev.value + ctx.strategy.rollout_weight * rollout_v;
          break;
      }
      break;
    }
    NodeStats& node = it->second;
    const Move a = select_child(node, ctx.strategy.selection, ctx.config.c_puct, ctx.strategy.equivalence);
    path.push_back({&node, node.slot_of(a)});
    if (record) actions.push_back(a);
    s = s.apply(a);
  }

  backup(path, -leaf_v);

  std::vector<std::pair<int, Move>> updates;
  if (rave) {
    const std::size_t depth = path.size();
    std::vector<AmafEntry> entries;
    entries.reserve(depth + 1);
    const std::span<const Move> all(actions);
    for (std::size_t t = 0; t < depth; ++t) {
      const double v = ((depth - t) % 2 == 0) ? leaf_v : -leaf_v;
      entries.push_back({path[t].node, all.subspan(t), v});
    }
    if (leaf_node) entries.push_back({leaf_node, all.subspan(depth), leaf_v});
    amaf_backup(entries, (ctx.observer && *ctx.observer) ? &updates : nullptr);
  }

  if (ctx.observer && *ctx.observer) {
    SimulationTrace trace;
    trace.states = std::move(states);
    trace.actions = std::move(actions);
    trace.tree_actions = path.size();
    trace.expanded = leaf_node != nullptr;
    trace.leaf_value = leaf_v;
    trace.rave_updates = std::move(updates);
    (*ctx.observer)(trace);
  }
}

std::vector<double> search_impl(SearchContext& ctx, const GameState& root, Rng& rng) {
  if (root.terminal()) throw std::invalid_argument("search called on a terminal state");
  if (ctx.config.simulations < 1) throw std::invalid_argument("search needs at least one simulation");
  for (int i = 0; i < ctx.config.simulations; ++i) simulate_once(ctx, root, rng);
  const NodeStats& stats = ctx.tree.nodes.at(root.key());
  return normalize_to_policy(stats, ctx.strategy.uses_rave() ? stats.q_rave : stats.q, root.action_count());
}

}  // namespace

Evaluator uniform_evaluator() {
  return [](const GameState& s) {
    return Evaluation{std::vector<float>(s.action_count(), 1.0f), 0.0};
  };
}

NodeStats NodeStats::create(std::vector<Move> legal, std::span<const float> full_prior) {
  NodeStats st;
  const std::size_t k = legal.size();
  st.moves = std::move(legal);
  st.prior.assign(k, 0.0);
  st.q.assign(k, 0.0);
  st.n.assign(k, 0);
  st.q_rave.assign(k, 0.0);
  st.n_rave.assign(k, 0);
  st.slot_by_move.assign(full_prior.size(), -1);
  double mass = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Move m = st.moves[i];
    if (m < 0 || m >= static_cast<int>(full_prior.size()))
      throw std::invalid_argument("prior does not cover move " + std::to_string(m));
    st.slot_by_move[m] = static_cast<int>(i);
    const double p = std::max(0.0, static_cast<double>(full_prior[m]));
    st.prior[i] = p;
    mass += p;
  }
  for (auto& p : st.prior) p = mass > 0.0 ? p / mass : 1.0 / static_cast<double>(k);
  return st;
}

double puct_value(double q, double prior, int n_total, int n_a, double c) {
  return q + c * prior * std::sqrt(static_cast<double>(n_total)) / (n_a + 1);
}

Move select_child(const NodeStats& stats, SelectionRule rule, double c, double equivalence) {
  if (stats.moves.empty()) throw std::invalid_argument("select_child: no legal moves");
  double best = -std::numeric_limits<double>::infinity();
  Move best_move = stats.moves.front();
  for (std::size_t i = 0; i < stats.moves.size(); ++i) {
    double u;
    if (rule == SelectionRule::Puct) {
      u = puct_value(stats.q[i], stats.prior[i], stats.total_visits, stats.n[i], c);
    } else {
      u = uct_rave_value({stats.q[i], stats.n[i], stats.total_visits, stats.q_rave[i], stats.n_rave[i],
                          stats.total_rave_visits, stats.prior[i]},
                         c, equivalence);
    }
    const Move m = stats.moves[i];
    if (u > best || (u == best && m < best_move)) {
      best = u;
      best_move = m;
    }
  }
  return best_move;
}

void backup(std::span<const PathStep> path, double value) {
  double v = value;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    NodeStats& node = *it->node;
    const int k = it->slot;
    node.q[k] = (node.n[k] * node.q[k] + v) / (node.n[k] + 1);
    node.n[k] += 1;
    node.total_visits += 1;
    v = -v;
  }
}

std::vector<double> normalize_to_policy(const NodeStats& stats, std::span<const double> values,
                                        int action_count) {
  std::vector<double> pi(action_count, 0.0);
  if (stats.moves.empty()) return pi;
  const double lo = *std::min_element(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v - lo;
  for (std::size_t i = 0; i < stats.moves.size(); ++i) {
    pi[stats.moves[i]] = total > 0.0 ? (values[i] - lo) / total : 1.0 / static_cast<double>(stats.moves.size());
  }
  return pi;
}

int argmax(std::span<const double> values) {
  int best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = static_cast<int>(i);
  return best;
}

Mcts::Mcts(SearchConfig config, SearchStrategy strategy, Evaluator evaluator)
    : config_(config), strategy_(strategy), evaluator_(std::move(evaluator)) {
  if (config_.simulations < 1) throw std::invalid_argument("SearchConfig: simulations must be >= 1");
  if (!(config_.c_puct > 0.0)) throw std::invalid_argument("SearchConfig: c must be positive");
}

std::vector<double> Mcts::search(const GameState& root, Rng& rng) {
  SearchContext ctx{config_, strategy_, evaluator_, tree_, &observer_};
  return search_impl(ctx, root, rng);
}

std::vector<double> run_search(const GameState& s, const Evaluator& evaluator, const SearchConfig& cfg,
                               SearchTree& tree, Rng& rng, const SearchStrategy& strategy) {
  SearchContext ctx{cfg, strategy, evaluator, tree, nullptr};
  return search_impl(ctx, s, rng);
}

}  // namespace warmstart
