#pragma once

#include <cstddef>

#include "ter/solution.hpp"

namespace ter {

// Outcome of one heuristic initiation: the bandit reward is efficiency,
// improvement of the incumbent divided by the resources the initiation cost.
// improvement >= 0 and cost > 0 always hold.
struct EfficiencyRecord {
  std::size_t action_id = 0;
  double improvement = 0.0;
  double cost = 0.0;
  double efficiency = 0.0;
};

// Builds the record for an initiation that moved the incumbent from y_before
// to y_after at the given cost. Throws std::invalid_argument when cost is not
// positive or the incumbent worsened (minimization).
EfficiencyRecord record_initiation(double y_before, double y_after, double cost,
                                   std::size_t action_id);

EfficiencyRecord record_initiation(const SolutionState& before, const SolutionState& after,
                                   double cost, std::size_t action_id);

}  // namespace ter
