#include "ter/efficiency.hpp"

#include <stdexcept>

namespace ter {

EfficiencyRecord record_initiation(double y_before, double y_after, double cost,
                                   std::size_t action_id) {
  if (!(cost > 0.0)) throw std::invalid_argument("initiation cost must be positive");
  if (y_after > y_before) {
    throw std::invalid_argument("incumbent worsened across an initiation");
  }
  double improvement = y_before - y_after;
  return EfficiencyRecord{action_id, improvement, cost, improvement / cost};
}

EfficiencyRecord record_initiation(const SolutionState& before, const SolutionState& after,
                                   double cost, std::size_t action_id) {
  return record_initiation(before.y_best, after.y_best, cost, action_id);
}

}  // namespace ter
