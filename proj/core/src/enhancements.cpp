#include "warmstart/enhancements.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "warmstart/errors.hpp"

namespace warmstart {

std::string_view to_string(Enhancement e) {
  switch (e) {
    case Enhancement::Baseline: return "Baseline";
    case Enhancement::Rollout: return "Rollout";
    case Enhancement::Rave: return "Rave";
    case Enhancement::RoRa: return "RoRa";
    case Enhancement::WRo: return "WRo";
    case Enhancement::WRoRa: return "WRoRa";
  }
  return "unknown";
}

std::vector<Enhancement> all_enhancements() {
  return {Enhancement::Baseline, Enhancement::Rollout, Enhancement::Rave,
          Enhancement::RoRa,     Enhancement::WRo,     Enhancement::WRoRa};
}

Enhancement parse_enhancement(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
  for (Enhancement e : all_enhancements()) {
    std::string canonical(to_string(e));
    std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (canonical == n) return e;
  }
  throw ConfigError("unknown enhancement '" + std::string(name) +
                    "' (expected baseline, rollout, rave, rora, wro or wrora)");
}

RolloutResult random_rollout(const GameState& s, Rng& rng) {
  RolloutResult result;
  GameState cur = s;
  while (!cur.terminal()) {
    const auto moves = cur.legal_moves();
    const Move m = moves[rng.uniform_int(static_cast<int>(moves.size()))];
    result.moves.push_back(m);
    cur = cur.apply(m);
  }
  result.value = cur.outcome().value_for(s.to_move());
  return result;
}

double rave_beta(int n_total, double equivalence) {
  return std::sqrt(equivalence / (3.0 * n_total + equivalence));
}

double uct_rave_value(const RaveInputs& in, double c, double equivalence) {
  const double beta = rave_beta(in.n_total, equivalence);
  const double u = puct_value(in.q, in.prior, in.n_total, in.n, c);
  const double u_rave = puct_value(in.q_rave, in.prior, in.n_rave_total, in.n_rave, c);
  return (1.0 - beta) * u + beta * u_rave;
}

double schedule_weight(int iteration, int iprime) {
  if (iprime < 1) throw std::invalid_argument("schedule_weight: I' must be >= 1");
  if (iteration < 0 || iteration > iprime)
    throw std::invalid_argument("schedule_weight: iteration " + std::to_string(iteration) +
                                " outside [0, " + std::to_string(iprime) + "]");
  return 1.0 - static_cast<double>(iteration) / iprime;
}

double leaf_value(Enhancement kind, double network_value, double rollout_value, double weight) {
  switch (kind) {
    case Enhancement::Baseline:
    case Enhancement::Rave: return network_value;
    case Enhancement::Rollout:
    case Enhancement::RoRa: return rollout_value;
    case Enhancement::WRo:
    case Enhancement::WRoRa: return (1.0 - weight) * network_value + weight * rollout_value;
  }
  return network_value;
}

int amaf_backup(std::span<const AmafEntry> entries, std::vector<std::pair<int, Move>>* updated) {
  int count = 0;
  std::vector<char> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    NodeStats& node = *entries[e].node;
    seen.assign(node.slot_by_move.size(), 0);
    const auto& tail = entries[e].tail;
    for (std::size_t t = 0; t < tail.size(); ++t) {
      const Move a = tail[t];
      if (a < 0 || a >= static_cast<int>(seen.size()) || seen[a]) continue;
      seen[a] = 1;
      const int k = node.slot_of(a);
      if (k < 0) continue;
      const double v = t % 2 == 0 ? entries[e].value : -entries[e].value;
      node.q_rave[k] = (node.n_rave[k] * node.q_rave[k] + v) / (node.n_rave[k] + 1);
      node.n_rave[k] += 1;
      node.total_rave_visits += 1;
      ++count;
      if (updated) updated->emplace_back(static_cast<int>(e), a);
    }
  }
  return count;
}

SearchStrategy make_enhanced_searcher(Enhancement kind, int iteration, int iprime, double equivalence) {
  SearchStrategy s;
  s.equivalence = equivalence;
  if (kind == Enhancement::Baseline || iteration >= iprime) return s;
  const double w = schedule_weight(iteration, iprime);
  switch (kind) {
    case Enhancement::Baseline: break;
    case Enhancement::Rollout: s.leaf = LeafRule::Rollout; break;
    case Enhancement::Rave: s.selection = SelectionRule::Rave; break;
    case Enhancement::RoRa:
      s.selection = SelectionRule::Rave;
      s.leaf = LeafRule::Rollout;
      break;
    case Enhancement::WRo:
      s.leaf = LeafRule::Mixed;
      s.rollout_weight = w;
      break;
    case Enhancement::WRoRa:
      s.selection = SelectionRule::Rave;
      s.leaf = LeafRule::Mixed;
      s.rollout_weight = w;
      break;
  }
  return s;
}

}  // namespace warmstart
