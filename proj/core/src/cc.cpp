#include "ter/cc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ter {

std::size_t default_group_size(std::size_t dimension) {
  std::size_t half = (dimension + 1) / 2;
  return std::max<std::size_t>(1, std::min<std::size_t>(100, half));
}

std::vector<std::vector<std::size_t>> random_grouping(std::size_t dimension,
                                                      std::size_t group_size, Rng& rng) {
  if (dimension < 1) throw std::invalid_argument("grouping needs at least one dimension");
  if (group_size < 1) throw std::invalid_argument("group size must be at least 1");

  std::vector<std::size_t> permutation(dimension);
  std::iota(permutation.begin(), permutation.end(), std::size_t{0});
  std::shuffle(permutation.begin(), permutation.end(), rng);

  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t start = 0; start < dimension; start += group_size) {
    std::size_t end = std::min(dimension, start + group_size);
    groups.emplace_back(permutation.begin() + start, permutation.begin() + end);
  }
  return groups;
}

Cc::Cc(CcConfig config) : config_(config) {
  if (config.np < 4) throw std::invalid_argument("cc population needs at least 4 members");
  if (!(config.f > 0.0)) throw std::invalid_argument("cc differential weight must be positive");
  if (!(config.cr >= 0.0 && config.cr <= 1.0)) {
    throw std::invalid_argument("cc crossover rate must lie in [0, 1]");
  }
}

void Cc::evolve_member(Initiation& init, SolutionState& state, Rng& rng,
                       const std::vector<std::size_t>& group, GroupPopulation& pop,
                       std::size_t i) {
  const Box& box = init.bounds();
  std::size_t np = config_.np;

  std::size_t r1 = uniform_index(rng, 0, np - 1);
  while (r1 == i) r1 = uniform_index(rng, 0, np - 1);
  std::size_t r2 = uniform_index(rng, 0, np - 1);
  while (r2 == i || r2 == r1) r2 = uniform_index(rng, 0, np - 1);
  std::size_t r3 = uniform_index(rng, 0, np - 1);
  while (r3 == i || r3 == r1 || r3 == r2) r3 = uniform_index(rng, 0, np - 1);

  std::vector<double> trial(group.size());
  std::size_t j_rand = uniform_index(rng, 0, group.size() - 1);
  for (std::size_t j = 0; j < group.size(); ++j) {
    bool take = uniform_real(rng, 0.0, 1.0) < config_.cr || j == j_rand;
    if (take) {
      double mutant = pop.members[r1][j] + config_.f * (pop.members[r2][j] - pop.members[r3][j]);
      trial[j] = box.reflect(group[j], mutant);
    } else {
      trial[j] = pop.members[i][j];
    }
  }

  std::vector<double> composed = state.x_best;
  for (std::size_t j = 0; j < group.size(); ++j) composed[group[j]] = trial[j];
  double y = init.evaluate(composed);

  if (y <= pop.fitness[i]) {
    pop.members[i] = std::move(trial);
    pop.fitness[i] = y;
  }
  if (y < state.y_best) {
    state.x_best = std::move(composed);
    state.y_best = y;
  }
}

void Cc::run(Initiation& init, SolutionState& state, Rng& rng) {
  const Box& box = init.bounds();
  std::size_t dimension = box.dimension();
  if (state.x_best.size() != dimension) {
    throw std::invalid_argument("cc: incumbent dimension mismatch");
  }

  // Fresh decomposition every initiation; the previous cycle's populations
  // are tied to the previous grouping and are discarded with it.
  std::size_t group_size =
      config_.group_size > 0 ? config_.group_size : default_group_size(dimension);
  groups_ = random_grouping(dimension, group_size, rng);
  populations_.assign(groups_.size(), GroupPopulation{});
  group_cursor_ = 0;
  member_cursor_ = 0;

  while (!init.exhausted()) {
    const std::vector<std::size_t>& group = groups_[group_cursor_];
    GroupPopulation& pop = populations_[group_cursor_];

    if (pop.members.empty()) {
      pop.members.assign(config_.np, std::vector<double>(group.size()));
      pop.fitness.assign(config_.np, 0.0);
      // The incumbent's slice seeds member 0; composing it reproduces the
      // incumbent exactly, so its value is already known.
      for (std::size_t j = 0; j < group.size(); ++j) {
        pop.members[0][j] = state.x_best[group[j]];
      }
      pop.fitness[0] = state.y_best;
      pop.ready = 1;
    }

    while (pop.ready < config_.np && !init.exhausted()) {
      std::vector<double>& member = pop.members[pop.ready];
      for (std::size_t j = 0; j < group.size(); ++j) {
        member[j] = uniform_real(rng, box.lower[group[j]], box.upper[group[j]]);
      }
      std::vector<double> composed = state.x_best;
      for (std::size_t j = 0; j < group.size(); ++j) composed[group[j]] = member[j];
      double y = init.evaluate(composed);
      pop.fitness[pop.ready] = y;
      if (y < state.y_best) {
        state.x_best = std::move(composed);
        state.y_best = y;
      }
      ++pop.ready;
    }
    if (pop.ready < config_.np) break;

    while (member_cursor_ < config_.np && !init.exhausted()) {
      evolve_member(init, state, rng, group, pop, member_cursor_);
      ++member_cursor_;
    }
    if (member_cursor_ < config_.np) break;

    member_cursor_ = 0;
    group_cursor_ = (group_cursor_ + 1) % groups_.size();
  }
}

nlohmann::json Cc::snapshot() const {
  nlohmann::json populations = nlohmann::json::array();
  for (const GroupPopulation& pop : populations_) {
    populations.push_back({
        {"members", pop.members},
        {"fitness", pop.fitness},
        {"ready", pop.ready},
    });
  }
  return nlohmann::json{
      {"name", "cc"},
      {"groups", groups_},
      {"populations", std::move(populations)},
      {"group_cursor", group_cursor_},
      {"member_cursor", member_cursor_},
  };
}

}  // namespace ter
