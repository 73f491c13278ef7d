#pragma once

#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ter/heuristic.hpp"
#include "ter/objective.hpp"

namespace ter::test {

inline double sphere_value(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum;
}

inline FunctionObjective make_sphere(std::size_t dimension, double lo = -5.0, double hi = 5.0) {
  return FunctionObjective(sphere_value, Box::cube(dimension, lo, hi));
}

// Spends its whole allowance re-evaluating the incumbent; never improves it.
class IdleProbe : public Heuristic {
 public:
  std::string_view name() const override { return "idle"; }
  void run(Initiation& init, SolutionState& state, Rng&) override {
    while (!init.exhausted()) init.evaluate(state.x_best);
  }
  nlohmann::json snapshot() const override { return {{"name", "idle"}}; }
};

// Returns without consuming anything, to trip the controller's cost guard.
class Freeloader : public Heuristic {
 public:
  std::string_view name() const override { return "freeloader"; }
  void run(Initiation&, SolutionState&, Rng&) override {}
  nlohmann::json snapshot() const override { return {{"name", "freeloader"}}; }
};

// Unique scratch directory removed on destruction.
struct ScratchDir {
  std::filesystem::path path;

  explicit ScratchDir(const std::string& tag) {
    std::random_device entropy;
    path = std::filesystem::temp_directory_path() /
           ("ter_test_" + tag + "_" + std::to_string(entropy()));
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace ter::test
