#include "warmstart/elo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "warmstart/errors.hpp"

namespace warmstart {

double EloTable::rating(const std::string& agent) const {
  const auto it = std::lower_bound(agents.begin(), agents.end(), agent);
  if (it == agents.end() || *it != agent) throw EloError("no rating for agent '" + agent + "'");
  return ratings[it - agents.begin()];
}

EloTable compute_elo(std::span<const MatchRecord> records, const EloOptions& options) {
  EloTable table;
  for (const auto& r : records) {
    if (r.agent_a == r.agent_b) throw EloError("agent '" + r.agent_a + "' is paired with itself");
    table.agents.push_back(r.agent_a);
    table.agents.push_back(r.agent_b);
  }
  std::sort(table.agents.begin(), table.agents.end());
  table.agents.erase(std::unique(table.agents.begin(), table.agents.end()), table.agents.end());
  const int k = static_cast<int>(table.agents.size());
  if (k < 2) throw EloError("ratings need at least two agents");
  auto index = [&](const std::string& name) {
    return static_cast<int>(std::lower_bound(table.agents.begin(), table.agents.end(), name) -
                            table.agents.begin());
  };

  // wins[i][j]: score of i against j, draws as halves.
  std::vector<std::vector<double>> wins(k, std::vector<double>(k, 0.0));
  std::vector<std::vector<bool>> played(k, std::vector<bool>(k, false));
  std::vector<std::vector<bool>> decisive(k, std::vector<bool>(k, false));
  table.games.assign(k, 0);
  for (const auto& r : records) {
    const int a = index(r.agent_a);
    const int b = index(r.agent_b);
    wins[a][b] += r.wins_a + 0.5 * r.draws;
    wins[b][a] += r.wins_b + 0.5 * r.draws;
    table.games[a] += r.games;
    table.games[b] += r.games;
    if (r.games > 0) played[a][b] = played[b][a] = true;
    if (r.wins_a + r.wins_b > 0) decisive[a][b] = decisive[b][a] = true;
  }

  std::vector<int> component(k, -1);
  int components = 0;
  for (int start = 0; start < k; ++start) {
    if (component[start] >= 0) continue;
    std::vector<int> stack{start};
    component[start] = components;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < k; ++v) {
        if (decisive[u][v] && component[v] < 0) {
          component[v] = components;
          stack.push_back(v);
        }
      }
    }
    ++components;
  }
  if (components > 1) {
    std::string msg = "the win/loss graph is disconnected:";
    for (int c = 0; c < components; ++c) {
      msg += " {";
      bool first = true;
      for (int i = 0; i < k; ++i) {
        if (component[i] != c) continue;
        msg += (first ? "" : ", ") + table.agents[i];
        first = false;
      }
      msg += "}";
    }
    throw EloError(msg);
  }

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (played[i][j]) wins[i][j] += options.prior_games;

  std::vector<double> total_wins(k, 0.0);
  for (int i = 0; i < k; ++i) total_wins[i] = std::accumulate(wins[i].begin(), wins[i].end(), 0.0);

  const double elo_per_log = 400.0 / std::log(10.0);
  std::vector<double> log_gamma(k, 0.0);
  std::vector<double> next(k, 0.0);
  bool converged = false;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    for (int i = 0; i < k; ++i) {
      const double gi = std::exp(log_gamma[i]);
      double denom = 0.0;
      for (int j = 0; j < k; ++j) {
        if (j == i || !played[i][j]) continue;
        denom += (wins[i][j] + wins[j][i]) / (gi + std::exp(log_gamma[j]));
      }
      next[i] = std::log(total_wins[i] / denom);
    }
    const double mean = std::accumulate(next.begin(), next.end(), 0.0) / k;
    double max_change = 0.0;
    for (int i = 0; i < k; ++i) {
      next[i] -= mean;
      max_change = std::max(max_change, std::abs(next[i] - log_gamma[i]) * elo_per_log);
    }
    log_gamma.swap(next);
    table.iterations = iter;
    if (max_change < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) throw EloError("rating fit did not converge");

  double norm2 = 0.0;
  for (int i = 0; i < k; ++i) {
    const double gi = std::exp(log_gamma[i]);
    double expected = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j == i || !played[i][j]) continue;
      expected += (wins[i][j] + wins[j][i]) * gi / (gi + std::exp(log_gamma[j]));
    }
    norm2 += (total_wins[i] - expected) * (total_wins[i] - expected);
  }
  table.gradient_norm = std::sqrt(norm2);

  table.ratings.resize(k);
  for (int i = 0; i < k; ++i) table.ratings[i] = log_gamma[i] * elo_per_log;
  const double mean = std::accumulate(table.ratings.begin(), table.ratings.end(), 0.0) / k;
  for (auto& r : table.ratings) r -= mean;
  return table;
}

}  // namespace warmstart
