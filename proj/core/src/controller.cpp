#include "ter/controller.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace ter {

std::string_view policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Ter: return "ter";
    case PolicyKind::Random: return "random";
    case PolicyKind::Fixed: return "fixed";
  }
  throw std::invalid_argument("unknown policy kind");
}

std::size_t random_policy_step(std::size_t action_count, Rng& rng) {
  if (action_count < 1) throw std::invalid_argument("need at least one action");
  return uniform_index(rng, 0, action_count - 1);
}

OptimizeResult run_controller(Objective& objective, std::vector<ActionSpec>& actions,
                              ResourceMeter& meter, const ControllerConfig& config,
                              SolutionState init, Rng& rng) {
  if (actions.empty()) throw std::invalid_argument("action set is empty");
  for (const ActionSpec& action : actions) {
    if (!action.heuristic) throw std::invalid_argument("action without a heuristic");
    if (!(action.per_initiation_budget > 0.0)) {
      throw std::invalid_argument("per-initiation budget must be positive");
    }
  }
  if (config.policy == PolicyKind::Ter && !(config.tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  if (config.policy == PolicyKind::Fixed && config.fixed_action >= actions.size()) {
    throw std::invalid_argument("fixed action out of range");
  }

  // One stream for selection, one per action, spawned in a fixed order so a
  // heuristic's randomness depends only on its own initiations.
  Rng selector_rng = spawn_stream(rng);
  std::vector<Rng> heuristic_rngs;
  heuristic_rngs.reserve(actions.size());
  for (std::size_t a = 0; a < actions.size(); ++a) {
    heuristic_rngs.push_back(spawn_stream(rng));
  }

  WindowMemory window(config.window);
  SolutionState state = std::move(init);
  const double y0 = state.y_best;

  RunRecord record;
  record.curve.push_back(CurvePoint{meter.consumed(), state.y_best});

  while (!meter.exhausted()) {
    std::size_t a = 0;
    switch (config.policy) {
      case PolicyKind::Ter:
        a = sample_action(action_means(window, actions.size()), config.tau, selector_rng);
        break;
      case PolicyKind::Random:
        a = random_policy_step(actions.size(), selector_rng);
        break;
      case PolicyKind::Fixed:
        a = config.fixed_action;
        break;
    }

    double allowance = std::min(actions[a].per_initiation_budget, meter.remaining());
    Initiation initiation(objective, meter, allowance);
    double y_before = state.y_best;
    actions[a].heuristic->run(initiation, state, heuristic_rngs[a]);
    double cost = initiation.settle();
    if (!(cost > 0.0)) {
      throw std::runtime_error("heuristic '" + std::string(actions[a].heuristic->name()) +
                               "' consumed no resources; aborting to avoid an endless loop");
    }

    window.push(record_initiation(y_before, state.y_best, cost, a));
    record.action_sequence.push_back(a);
    record.curve.push_back(CurvePoint{meter.consumed(), state.y_best});
  }

  record.consumed = meter.consumed();
  record.overall_improvement = y0 - state.y_best;
  record.overall_efficiency =
      record.consumed > 0.0 ? record.overall_improvement / record.consumed : 0.0;
  return OptimizeResult{std::move(state), std::move(record)};
}

OptimizeResult ter_optimize(Objective& objective, std::vector<ActionSpec>& actions,
                            ResourceMeter& meter, const PolicyConfig& config,
                            SolutionState init, Rng& rng) {
  if (actions.size() != config.action_count) {
    throw std::invalid_argument("action set size does not match the policy config");
  }
  ControllerConfig controller;
  controller.policy = PolicyKind::Ter;
  controller.tau = config.tau;
  controller.window = config.window;
  return run_controller(objective, actions, meter, controller, std::move(init), rng);
}

double empirical_exploration_rate(const PolicyConfig& config,
                                  const std::vector<EfficiencyRecord>& window_contents,
                                  std::size_t trials, Rng& rng) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");

  WindowMemory window(config.window);
  for (const EfficiencyRecord& record : window_contents) window.push(record);

  std::vector<double> means = action_means(window, config.action_count);
  for (double m : means) {
    if (std::isinf(m)) {
      throw std::invalid_argument("every action needs a record in the window");
    }
  }
  std::size_t argmax =
      static_cast<std::size_t>(std::max_element(means.begin(), means.end()) - means.begin());

  std::vector<double> probabilities = softmax_probabilities(means, config.tau);
  std::size_t off_argmax = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    if (sample_index(probabilities, rng) != argmax) ++off_argmax;
  }
  return static_cast<double>(off_argmax) / static_cast<double>(trials);
}

}  // namespace ter
