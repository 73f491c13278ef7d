#include "ter/ls1.hpp"

#include <stdexcept>

namespace ter {

Ls1::Ls1(Ls1Config config) : config_(config) {
  if (!(config.initial_range_factor > 0.0 && config.initial_range_factor <= 0.5)) {
    throw std::invalid_argument("ls1 initial range factor must lie in (0, 0.5]");
  }
  if (!(config.reset_floor_factor > 0.0)) {
    throw std::invalid_argument("ls1 reset floor must be positive");
  }
}

void Ls1::advance(const Box& box) {
  phase_ = 0;
  if (++cursor_ < box.dimension()) return;
  cursor_ = 0;
  if (!improved_this_pass_) {
    for (std::size_t i = 0; i < sr_.size(); ++i) {
      sr_[i] *= 0.5;
      if (sr_[i] < config_.reset_floor_factor * box.range(i)) {
        sr_[i] = config_.initial_range_factor * box.range(i);
      }
    }
  }
  improved_this_pass_ = false;
}

void Ls1::run(Initiation& init, SolutionState& state, Rng&) {
  const Box& box = init.bounds();
  if (state.x_best.size() != box.dimension()) {
    throw std::invalid_argument("ls1: incumbent dimension mismatch");
  }
  if (!initialized_) {
    sr_.resize(box.dimension());
    for (std::size_t i = 0; i < sr_.size(); ++i) {
      sr_[i] = config_.initial_range_factor * box.range(i);
    }
    initialized_ = true;
  }

  while (!init.exhausted()) {
    double original = state.x_best[cursor_];
    double trial = phase_ == 0 ? box.clamp(cursor_, original - sr_[cursor_])
                               : box.clamp(cursor_, original + 0.5 * sr_[cursor_]);
    state.x_best[cursor_] = trial;
    double y = init.evaluate(state.x_best);
    if (y < state.y_best) {
      state.y_best = y;
      improved_this_pass_ = true;
      advance(box);
    } else {
      state.x_best[cursor_] = original;
      if (phase_ == 0) {
        phase_ = 1;
      } else {
        advance(box);
      }
    }
  }
}

nlohmann::json Ls1::snapshot() const {
  return nlohmann::json{
      {"name", "ls1"},
      {"initialized", initialized_},
      {"search_ranges", sr_},
      {"cursor", cursor_},
      {"phase", phase_},
      {"improved_this_pass", improved_this_pass_},
  };
}

}  // namespace ter
