#include "ter/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ter {
namespace {

// Worst-case mean of the leading action when the other |A|-1 actions hold one
// record each: w-|A|+1 slots remain, of which w-|A| can be 1.
double stretched_mean(std::size_t action_count, std::size_t window) {
  double slack = static_cast<double>(window - action_count);
  return slack / (slack + 1.0);
}

double exploit_probability(double k, double mean, std::size_t action_count) {
  double e = std::exp(k * mean);
  return e / (static_cast<double>(action_count - 1) + e);
}

}  // namespace

ExplorationBounds exploration_bounds(std::size_t action_count, std::size_t window, double tau) {
  if (action_count < 2) throw std::invalid_argument("bounds need at least 2 actions");
  if (window < action_count) throw std::invalid_argument("window must be at least the action count");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");

  double others = static_cast<double>(action_count - 1);
  double e_full = std::exp(1.0 / tau);
  double e_stretched = std::exp(stretched_mean(action_count, window) / tau);

  ExplorationBounds bounds;
  bounds.lower = e_full / (others + e_full);
  bounds.upper = others / (others * e_full + e_stretched);
  bounds.complement_lower = 1.0 - bounds.lower;
  return bounds;
}

std::vector<HyperparameterCandidate> solve_hyperparameters(double p_exploit_min,
                                                           double p_exploit_max,
                                                           std::size_t action_count) {
  std::vector<HyperparameterCandidate> candidates;
  if (action_count < 2) throw std::invalid_argument("solver needs at least 2 actions");
  if (!(0.0 < p_exploit_min && p_exploit_min < p_exploit_max && p_exploit_max < 1.0)) {
    return candidates;
  }

  double others = static_cast<double>(action_count - 1);
  // e^k / (|A|-1 + e^k) = p  <=>  k = ln(|A|-1) + ln(p / (1-p))
  double k_star = std::log(others * p_exploit_max / (1.0 - p_exploit_max));
  int k_lo = std::max(1, static_cast<int>(std::floor(k_star)));
  int k_hi = std::max(k_lo, static_cast<int>(std::ceil(k_star))) + 1;

  for (int k = k_lo; k <= k_hi; ++k) {
    double kd = static_cast<double>(k);
    if (exploit_probability(kd, 1.0, action_count) < p_exploit_min) continue;

    std::size_t window = std::max(action_count + 1, static_cast<std::size_t>(k));
    bool feasible = false;
    // The stretched-mean exploitation floor rises with w, so scan upward.
    for (std::size_t w = window; w <= window + 1000; ++w) {
      if (exploit_probability(kd, stretched_mean(action_count, w), action_count) >=
          p_exploit_min) {
        window = w;
        feasible = true;
        break;
      }
    }
    if (!feasible) continue;
    candidates.push_back(HyperparameterCandidate{1.0 / kd, k, window});
  }
  return candidates;
}

}  // namespace ter
