#pragma once

#include <cstddef>
#include <vector>

namespace ter {

// Selection-probability bounds for a full window in which every action has at
// least one record. `lower` and `upper` evaluate the closed forms
//   lower = e^(1/tau) / (|A| - 1 + e^(1/tau))
//   upper = (|A| - 1) / ((|A| - 1) e^(1/tau) + e^(m/tau)),  m = (w-|A|)/(w-|A|+1)
// and complement_lower = 1 - lower is the matching bound on the probability
// of not taking the action with the highest mean.
struct ExplorationBounds {
  double lower = 0.0;
  double upper = 0.0;
  double complement_lower = 0.0;
};

// Requires action_count >= 2, window >= action_count, tau > 0.
ExplorationBounds exploration_bounds(std::size_t action_count, std::size_t window, double tau);

// One feasible <tau, window> setting; tau is the integer fraction 1/k.
struct HyperparameterCandidate {
  double tau = 0.0;
  int k = 0;
  std::size_t window = 0;
};

// Inverts the selection-probability bounds over integer-fraction temperatures:
// picks k near the solution of e^k / (|A|-1+e^k) = p_exploit_max, then for
// each k the smallest window w >= max(|A|+1, k) whose worst-case exploitation
// probability e^(k m) / (|A|-1+e^(k m)), m = (w-|A|)/(w-|A|+1), still reaches
// p_exploit_min. Candidates come back in ascending k; an infeasible interval
// yields an empty list.
std::vector<HyperparameterCandidate> solve_hyperparameters(double p_exploit_min,
                                                           double p_exploit_max,
                                                           std::size_t action_count);

}  // namespace ter
