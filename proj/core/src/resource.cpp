#include "ter/resource.hpp"

#include <stdexcept>
#include <string>

namespace ter {

std::string_view resource_kind_name(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Evaluations: return "evaluations";
    case ResourceKind::WallTimeMs: return "wall-time-ms";
  }
  throw std::invalid_argument("unknown resource kind");
}

ResourceKind resource_kind_from_name(std::string_view name) {
  if (name == "evaluations") return ResourceKind::Evaluations;
  if (name == "wall-time-ms") return ResourceKind::WallTimeMs;
  throw std::invalid_argument("unknown resource kind: " + std::string(name));
}

ResourceMeter::ResourceMeter(ResourceKind kind, double budget)
    : kind_(kind), budget_(budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("resource budget must be positive");
}

void ResourceMeter::consume(double amount) {
  if (amount < 0.0) throw std::invalid_argument("resource amounts are non-negative");
  consumed_ += amount;
}

Initiation::Initiation(Objective& objective, ResourceMeter& meter, double allowance)
    : objective_(objective),
      meter_(meter),
      allowance_(allowance),
      start_(std::chrono::steady_clock::now()) {
  if (!(allowance > 0.0)) throw std::invalid_argument("initiation allowance must be positive");
}

double Initiation::evaluate(std::span<const double> x) {
  if (meter_.kind() == ResourceKind::Evaluations) {
    evaluations_ += 1.0;
    meter_.consume(1.0);
  }
  return objective_.evaluate(x);
}

double Initiation::consumed() const {
  if (meter_.kind() == ResourceKind::Evaluations) return evaluations_;
  std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start_;
  return elapsed.count();
}

double Initiation::settle() {
  if (settled_) throw std::logic_error("initiation settled twice");
  settled_ = true;
  double cost = consumed();
  if (meter_.kind() == ResourceKind::WallTimeMs) meter_.consume(cost);
  return cost;
}

}  // namespace ter
