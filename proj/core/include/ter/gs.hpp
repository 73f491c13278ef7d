#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ter/heuristic.hpp"

namespace ter {

struct GsConfig {
  std::size_t np = 100;
  // Fraction of the population eligible as the pbest attractor.
  double p = 0.1;
  // Success-history memory size for the F and CR adaptation.
  std::size_t history = 10;
  // Fixed parameter values for testing; unset means history-based sampling.
  std::optional<double> f_override;
  std::optional<double> cr_override;
};

// Success-history differential evolution (current-to-pbest/1/bin with an
// archive of replaced parents). The population, archive, and adaptation
// memory persist across initiations; the first initiation seeds one member
// with the incumbent and evaluates the whole population. A generation may
// stop mid-way when the allowance runs out and resumes at the same member.
class Gs : public Heuristic {
 public:
  explicit Gs(GsConfig config = {});

  std::string_view name() const override { return "gs"; }
  void run(Initiation& init, SolutionState& state, Rng& rng) override;
  nlohmann::json snapshot() const override;

  const std::vector<std::vector<double>>& population() const { return population_; }
  const std::vector<double>& fitness() const { return fitness_; }
  std::size_t archive_size() const { return archive_.size(); }

 private:
  void evolve_member(Initiation& init, SolutionState& state, Rng& rng, std::size_t i);
  void finish_generation();

  GsConfig config_;
  std::vector<std::vector<double>> population_;
  std::vector<double> fitness_;
  std::vector<std::vector<double>> archive_;
  std::vector<double> memory_f_;
  std::vector<double> memory_cr_;
  std::size_t memory_pos_ = 0;

  // Members below init_cursor_ are evaluated; the population is live once
  // init_cursor_ == np.
  std::size_t init_cursor_ = 0;
  std::size_t member_cursor_ = 0;
  std::vector<std::size_t> sorted_;

  std::vector<double> success_f_;
  std::vector<double> success_cr_;
  std::vector<double> success_weight_;
};

}  // namespace ter
