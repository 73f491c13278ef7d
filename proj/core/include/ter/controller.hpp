#pragma once

#include <cstddef>
#include <vector>

#include "ter/heuristic.hpp"
#include "ter/policy.hpp"
#include "ter/resource.hpp"
#include "ter/run_record.hpp"
#include "ter/solution.hpp"

namespace ter {

// How the next action is chosen each loop iteration. Ter is the softmax
// policy over windowed efficiency means; Random is the uniform baseline;
// Fixed always plays one action (single-heuristic runs).
enum class PolicyKind { Ter, Random, Fixed };

std::string_view policy_kind_name(PolicyKind kind);

struct ControllerConfig {
  PolicyKind policy = PolicyKind::Ter;
  double tau = 0.2;
  std::size_t window = 5;
  std::size_t fixed_action = 0;
};

struct OptimizeResult {
  SolutionState state;
  RunRecord record;
};

// Uniform action draw, the RAN baseline's selection rule.
std::size_t random_policy_step(std::size_t action_count, Rng& rng);

// The main optimization loop. Starting from an incumbent whose evaluation is
// already accounted in the meter, it repeatedly selects an action, runs one
// initiation with allowance min(delta_t, remaining budget), and appends the
// efficiency record to the window, until the budget is consumed. The caller's
// rng seeds one controller stream plus one private stream per action, in
// order, so heuristic randomness is decoupled from selection randomness.
// Throws std::runtime_error if an initiation consumes no resources.
OptimizeResult run_controller(Objective& objective, std::vector<ActionSpec>& actions,
                              ResourceMeter& meter, const ControllerConfig& config,
                              SolutionState init, Rng& rng);

// run_controller with the Ter policy.
OptimizeResult ter_optimize(Objective& objective, std::vector<ActionSpec>& actions,
                            ResourceMeter& meter, const PolicyConfig& config,
                            SolutionState init, Rng& rng);

// Monte-Carlo frequency of sampling an action other than the argmax mean,
// given fixed window contents in which every action has at least one record.
double empirical_exploration_rate(const PolicyConfig& config,
                                  const std::vector<EfficiencyRecord>& window_contents,
                                  std::size_t trials, Rng& rng);

}  // namespace ter
