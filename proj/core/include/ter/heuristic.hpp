#pragma once

#include <memory>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ter/resource.hpp"
#include "ter/rng.hpp"
#include "ter/solution.hpp"

namespace ter {

// A bandit arm: one search procedure with private, per-run state that
// persists across its own initiations. A heuristic touches only its own state
// plus the shared incumbent, keeping the action set decoupled.
class Heuristic {
 public:
  virtual ~Heuristic() = default;

  virtual std::string_view name() const = 0;

  // Runs one initiation: improves `state` in place, polling init.exhausted()
  // before each evaluation. Must consume at least one resource unit and never
  // worsen state.y_best.
  virtual void run(Initiation& init, SolutionState& state, Rng& rng) = 0;

  // Full dump of the private state, for decoupling and determinism checks.
  virtual nlohmann::json snapshot() const = 0;
};

// One entry of the action set: the heuristic plus its per-initiation resource
// allotment (delta_t). The controller grants min(allotment, remaining budget).
struct ActionSpec {
  std::unique_ptr<Heuristic> heuristic;
  double per_initiation_budget = 0.0;
};

}  // namespace ter
