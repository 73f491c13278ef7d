#include "ter/gs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ter {

Gs::Gs(GsConfig config) : config_(config) {
  if (config.np < 5) throw std::invalid_argument("gs population needs at least 5 members");
  if (!(config.p > 0.0 && config.p <= 1.0)) {
    throw std::invalid_argument("gs pbest fraction must lie in (0, 1]");
  }
  if (config.history < 1) throw std::invalid_argument("gs history must be at least 1");
  memory_f_.assign(config.history, 0.5);
  memory_cr_.assign(config.history, 0.5);
}

void Gs::evolve_member(Initiation& init, SolutionState& state, Rng& rng, std::size_t i) {
  const Box& box = init.bounds();
  std::size_t np = config_.np;

  std::size_t slot = uniform_index(rng, 0, config_.history - 1);
  double f = config_.f_override ? *config_.f_override : [&] {
    std::cauchy_distribution<double> cauchy(memory_f_[slot], 0.1);
    double v = cauchy(rng);
    while (v <= 0.0) v = cauchy(rng);
    return std::min(v, 1.0);
  }();
  double cr = config_.cr_override ? *config_.cr_override : [&] {
    std::normal_distribution<double> normal(memory_cr_[slot], 0.1);
    return std::clamp(normal(rng), 0.0, 1.0);
  }();

  std::size_t top = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(config_.p * static_cast<double>(np))));
  std::size_t pbest = sorted_[uniform_index(rng, 0, top - 1)];

  std::size_t r1 = uniform_index(rng, 0, np - 1);
  while (r1 == i) r1 = uniform_index(rng, 0, np - 1);
  std::size_t r2 = uniform_index(rng, 0, np + archive_.size() - 1);
  while (r2 == i || r2 == r1) r2 = uniform_index(rng, 0, np + archive_.size() - 1);
  const std::vector<double>& donor = r2 < np ? population_[r2] : archive_[r2 - np];

  const std::vector<double>& parent = population_[i];
  std::vector<double> trial(parent.size());
  std::size_t j_rand = uniform_index(rng, 0, parent.size() - 1);
  for (std::size_t j = 0; j < parent.size(); ++j) {
    bool take = uniform_real(rng, 0.0, 1.0) < cr || j == j_rand;
    if (take) {
      double mutant = parent[j] + f * (population_[pbest][j] - parent[j]) +
                      f * (population_[r1][j] - donor[j]);
      trial[j] = box.reflect(j, mutant);
    } else {
      trial[j] = parent[j];
    }
  }

  double y = init.evaluate(trial);
  if (y <= fitness_[i]) {
    if (y < fitness_[i]) {
      if (archive_.size() < np) {
        archive_.push_back(population_[i]);
      } else {
        archive_[uniform_index(rng, 0, archive_.size() - 1)] = population_[i];
      }
      success_f_.push_back(f);
      success_cr_.push_back(cr);
      success_weight_.push_back(fitness_[i] - y);
    }
    population_[i] = trial;
    fitness_[i] = y;
    if (y < state.y_best) {
      state.x_best = std::move(trial);
      state.y_best = y;
    }
  }
}

void Gs::finish_generation() {
  if (!success_f_.empty()) {
    double total = std::accumulate(success_weight_.begin(), success_weight_.end(), 0.0);
    double lehmer_num = 0.0, lehmer_den = 0.0, cr_mean = 0.0;
    for (std::size_t k = 0; k < success_f_.size(); ++k) {
      double w = success_weight_[k] / total;
      lehmer_num += w * success_f_[k] * success_f_[k];
      lehmer_den += w * success_f_[k];
      cr_mean += w * success_cr_[k];
    }
    memory_f_[memory_pos_] = lehmer_num / lehmer_den;
    memory_cr_[memory_pos_] = cr_mean;
    memory_pos_ = (memory_pos_ + 1) % config_.history;
    success_f_.clear();
    success_cr_.clear();
    success_weight_.clear();
  }
  member_cursor_ = 0;
}

void Gs::run(Initiation& init, SolutionState& state, Rng& rng) {
  const Box& box = init.bounds();
  std::size_t dimension = box.dimension();
  if (state.x_best.size() != dimension) {
    throw std::invalid_argument("gs: incumbent dimension mismatch");
  }

  if (population_.empty()) {
    population_.assign(config_.np, std::vector<double>(dimension));
    fitness_.assign(config_.np, 0.0);
    population_[0] = state.x_best;
    for (std::size_t i = 1; i < config_.np; ++i) {
      population_[i] = box.sample_uniform(rng);
    }
    init_cursor_ = 0;
  }

  while (init_cursor_ < config_.np && !init.exhausted()) {
    double y = init.evaluate(population_[init_cursor_]);
    fitness_[init_cursor_] = y;
    if (y < state.y_best) {
      state.x_best = population_[init_cursor_];
      state.y_best = y;
    }
    ++init_cursor_;
  }

  while (!init.exhausted()) {
    if (member_cursor_ == 0) {
      sorted_.resize(config_.np);
      std::iota(sorted_.begin(), sorted_.end(), std::size_t{0});
      std::sort(sorted_.begin(), sorted_.end(),
                [&](std::size_t a, std::size_t b) { return fitness_[a] < fitness_[b]; });
    }
    evolve_member(init, state, rng, member_cursor_);
    if (++member_cursor_ == config_.np) finish_generation();
  }
}

nlohmann::json Gs::snapshot() const {
  return nlohmann::json{
      {"name", "gs"},
      {"population", population_},
      {"fitness", fitness_},
      {"archive", archive_},
      {"memory_f", memory_f_},
      {"memory_cr", memory_cr_},
      {"memory_pos", memory_pos_},
      {"init_cursor", init_cursor_},
      {"member_cursor", member_cursor_},
      {"success_f", success_f_},
      {"success_cr", success_cr_},
      {"success_weight", success_weight_},
  };
}

}  // namespace ter
