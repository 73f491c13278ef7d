#pragma once

#include <cstddef>
#include <vector>

#include "ter/heuristic.hpp"

namespace ter {

struct CcConfig {
  // 0 selects the default min(100, ceil(D / 2)).
  std::size_t group_size = 0;
  std::size_t np = 50;
  double f = 0.5;
  double cr = 0.9;
};

// Partitions the decision variables into random disjoint groups covering all
// indices, drawn fresh at every initiation.
std::vector<std::vector<std::size_t>> random_grouping(std::size_t dimension,
                                                      std::size_t group_size, Rng& rng);

std::size_t default_group_size(std::size_t dimension);

// Cooperative coevolution with random grouping: each initiation re-partitions
// the variables, then cycles through the groups running one generation of
// DE/rand/1/bin per visit on the group's coordinates, with the remaining
// coordinates frozen to the incumbent (the context vector). A candidate is
// always evaluated as the full composed vector; composed improvements update
// the incumbent immediately.
class Cc : public Heuristic {
 public:
  explicit Cc(CcConfig config = {});

  std::string_view name() const override { return "cc"; }
  void run(Initiation& init, SolutionState& state, Rng& rng) override;
  nlohmann::json snapshot() const override;

 private:
  struct GroupPopulation {
    std::vector<std::vector<double>> members;
    std::vector<double> fitness;
    // Members below this index are initialized and evaluated.
    std::size_t ready = 0;
  };

  void evolve_member(Initiation& init, SolutionState& state, Rng& rng,
                     const std::vector<std::size_t>& group, GroupPopulation& pop,
                     std::size_t i);

  CcConfig config_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<GroupPopulation> populations_;
  std::size_t group_cursor_ = 0;
  std::size_t member_cursor_ = 0;
};

}  // namespace ter
