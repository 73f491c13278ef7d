#pragma once

#include <limits>
#include <vector>

namespace ter {

// Incumbent best point and its objective value. y_best is non-increasing over
// a run; it always equals the objective value of x_best.
struct SolutionState {
  std::vector<double> x_best;
  double y_best = std::numeric_limits<double>::infinity();
};

}  // namespace ter
