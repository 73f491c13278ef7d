#pragma once

#include <cstddef>
#include <vector>

#include "ter/heuristic.hpp"

namespace ter {

struct Ls1Config {
  // Initial per-dimension search range as a fraction of the box range.
  double initial_range_factor = 0.2;
  // A range below reset_floor_factor * box range snaps back to its initial value.
  double reset_floor_factor = 1e-15;
};

// Coordinate line search: sweeps dimensions in order, probing x_i - SR_i and
// then x_i + SR_i / 2, keeping strict improvements only. All ranges halve
// after a full pass without any improvement. The sweep cursor persists across
// initiations so allowance boundaries do not bias early dimensions.
class Ls1 : public Heuristic {
 public:
  explicit Ls1(Ls1Config config = {});

  std::string_view name() const override { return "ls1"; }
  void run(Initiation& init, SolutionState& state, Rng& rng) override;
  nlohmann::json snapshot() const override;

  const std::vector<double>& search_ranges() const { return sr_; }

 private:
  void advance(const Box& box);

  Ls1Config config_;
  bool initialized_ = false;
  std::vector<double> sr_;
  std::size_t cursor_ = 0;
  // 0: the downward probe is next; 1: the half-step upward probe is next.
  int phase_ = 0;
  bool improved_this_pass_ = false;
};

}  // namespace ter
