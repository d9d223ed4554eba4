#pragma once

#include <span>
#include <string>
#include <vector>

#include "warmstart/match.hpp"

namespace warmstart {

struct EloOptions {
  double prior_games = 1.0;  // virtual wins and losses added to every pair that played
  double tolerance = 0.01;   // stop when no rating moves by this much (Elo points)
  int max_iterations = 100000;
};

struct EloTable {
  std::vector<std::string> agents;  // sorted by name
  std::vector<double> ratings;      // mean 0
  std::vector<int> games;
  int iterations = 0;
  double gradient_norm = 0.0;  // of the log-likelihood in log-strength coordinates

  double rating(const std::string& agent) const;
};

/// Prior-regularized Bradley-Terry fit by minorization-maximization, draws
/// counted as half a win for each side. Throws EloError when the graph of
/// decisive results is disconnected or the fit does not converge.
EloTable compute_elo(std::span<const MatchRecord> records, const EloOptions& options = {});

}  // namespace warmstart
