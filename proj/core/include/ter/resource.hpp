#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>

#include "ter/objective.hpp"

namespace ter {

enum class ResourceKind { Evaluations, WallTimeMs };

std::string_view resource_kind_name(ResourceKind kind);
ResourceKind resource_kind_from_name(std::string_view name);

// Tracks consumption against a total budget in one abstract resource unit.
// consumed is non-decreasing and may exceed the budget by at most the cost of
// one final truncated initiation; the optimization loop never starts an
// initiation once consumed >= budget.
class ResourceMeter {
 public:
  ResourceMeter(ResourceKind kind, double budget);

  ResourceKind kind() const { return kind_; }
  double budget() const { return budget_; }
  double consumed() const { return consumed_; }
  double remaining() const { return consumed_ >= budget_ ? 0.0 : budget_ - consumed_; }
  bool exhausted() const { return consumed_ >= budget_; }

  void consume(double amount);

 private:
  ResourceKind kind_;
  double budget_;
  double consumed_ = 0.0;
};

// One budgeted heuristic invocation. Wraps the objective so every evaluation
// is metered; the heuristic polls exhausted() and stops once its allowance is
// spent. For wall-time metering the elapsed time is settled into the meter at
// the initiation boundary, not per evaluation.
class Initiation {
 public:
  Initiation(Objective& objective, ResourceMeter& meter, double allowance);

  double evaluate(std::span<const double> x);

  double allowance() const { return allowance_; }
  double consumed() const;
  bool exhausted() const { return consumed() >= allowance_; }

  const Box& bounds() const { return objective_.bounds(); }
  std::size_t dimension() const { return objective_.dimension(); }

  // Finalizes the initiation and returns its total cost. Charges the meter
  // with the elapsed time under wall-time metering (evaluation counts are
  // charged as they happen). Call exactly once, after the heuristic returns.
  double settle();

 private:
  Objective& objective_;
  ResourceMeter& meter_;
  double allowance_;
  double evaluations_ = 0.0;
  bool settled_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ter
