#include "warmstart/rhea.hpp"

#include <stdexcept>

#include "warmstart/errors.hpp"

namespace warmstart {

void RheaConfig::validate() const {
  if (population < 2) throw ConfigError("rhea population must be >= 2");
  if (horizon < 1) throw ConfigError("rhea horizon must be >= 1");
  if (rollouts_per_individual < 1) throw ConfigError("rhea rollouts per individual must be >= 1");
  if (mutation_rate < 0.0 || mutation_rate > 1.0) throw ConfigError("rhea mutation rate must be in [0, 1]");
  if (rollout_budget < population * rollouts_per_individual)
    throw ConfigError("rhea rollout budget must cover the initial population");
}

Move remap_gene(int gene, const std::vector<Move>& legal) {
  return legal[static_cast<std::size_t>(gene) % legal.size()];
}

PlayoutResult sequence_playout(const ActionSequence& genes, const GameState& s, Rng& rng) {
  if (s.terminal()) throw std::invalid_argument("sequence_playout on a terminal state");
  const Player me = s.to_move();
  GameState cur = s;
  std::size_t next_gene = 0;
  int steps = 0;
  while (!cur.terminal()) {
    const auto legal = cur.legal_moves();
    Move m;
    if (cur.to_move() == me && next_gene < genes.size()) {
      m = remap_gene(genes[next_gene++], legal);
    } else {
      m = legal[rng.uniform_int(static_cast<int>(legal.size()))];
    }
    cur = cur.apply(m);
    ++steps;
  }
  return {static_cast<double>(cur.outcome().value_for(me)), steps};
}

double fitness_of(std::span<const PlayoutResult> playouts) {
  if (playouts.empty()) throw std::invalid_argument("fitness_of: no playouts");
  double sum = 0.0;
  for (const auto& p : playouts) sum += p.q / p.steps;
  return sum / static_cast<double>(playouts.size());
}

double evaluate_fitness(const ActionSequence& genes, const GameState& s, const RheaConfig& cfg, Rng& rng) {
  std::vector<PlayoutResult> results;
  results.reserve(cfg.rollouts_per_individual);
  for (int i = 0; i < cfg.rollouts_per_individual; ++i) results.push_back(sequence_playout(genes, s, rng));
  return fitness_of(results);
}

ActionSequence random_sequence(int length, int gene_range, Rng& rng) {
  ActionSequence genes(length);
  for (auto& g : genes) g = rng.uniform_int(gene_range);
  return genes;
}

ActionSequence mutate(const ActionSequence& genes, double rate, int gene_range, Rng& rng) {
  ActionSequence out = genes;
  for (auto& g : out)
    if (rng.bernoulli(rate)) g = rng.uniform_int(gene_range);
  return out;
}

Move choose_move(const GameState& s, const RheaConfig& cfg, Rng& rng, RheaStats* stats) {
  cfg.validate();
  const auto legal = s.legal_moves();
  if (legal.empty()) throw std::invalid_argument("choose_move on a terminal state");
  RheaStats local;
  if (legal.size() == 1) {
    if (stats) *stats = local;
    return legal.front();
  }
  const int gene_range = s.action_count();
  std::vector<Individual> population;
  population.reserve(cfg.population + 1);
  for (int i = 0; i < cfg.population; ++i) {
    Individual ind{random_sequence(cfg.horizon, gene_range, rng), 0.0, cfg.rollouts_per_individual};
    ind.fitness = evaluate_fitness(ind.genes, s, cfg, rng);
    local.rollouts += cfg.rollouts_per_individual;
    ++local.evaluations;
    population.push_back(std::move(ind));
  }
  while (local.rollouts + cfg.rollouts_per_individual <= cfg.rollout_budget) {
    const auto& parent = population[rng.uniform_int(static_cast<int>(population.size()))];
    Individual child{mutate(parent.genes, cfg.mutation_rate, gene_range, rng), 0.0, cfg.rollouts_per_individual};
    child.fitness = evaluate_fitness(child.genes, s, cfg, rng);
    local.rollouts += cfg.rollouts_per_individual;
    ++local.evaluations;
    population.push_back(std::move(child));
    // Drop the worst; among equals the oldest goes first.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
      if (population[i].fitness < population[worst].fitness) worst = i;
    population.erase(population.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i)
    if (population[i].fitness > population[best].fitness) best = i;
  local.final_population = static_cast<int>(population.size());
  if (stats) *stats = local;
  return remap_gene(population[best].genes.front(), legal);
}

}  // namespace warmstart
