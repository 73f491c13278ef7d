#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "ter/cc.hpp"
#include "ter/gs.hpp"
#include "ter/ls1.hpp"
#include "ter/problems.hpp"

using namespace ter;
using namespace ter::test;

namespace {

// One metered call with a fixed evaluation allowance.
double run_once(Heuristic& heuristic, Objective& objective, ResourceMeter& meter,
                SolutionState& state, Rng& rng, double allowance) {
  Initiation initiation(objective, meter, allowance);
  heuristic.run(initiation, state, rng);
  return initiation.settle();
}

}  // namespace

TEST_CASE("ls1 validates its configuration") {
  CHECK_THROWS_AS(Ls1(Ls1Config{0.0, 1e-15}), std::invalid_argument);
  CHECK_THROWS_AS(Ls1(Ls1Config{0.6, 1e-15}), std::invalid_argument);
  CHECK_THROWS_AS(Ls1(Ls1Config{0.2, 0.0}), std::invalid_argument);
}

TEST_CASE("ls1 walks a parabola to its minimum") {
  FunctionObjective objective(
      [](std::span<const double> x) { return x[0] * x[0]; }, Box::cube(1, -1.25, 1.25));
  ResourceMeter meter(ResourceKind::Evaluations, 1000.0);
  Ls1 ls1;
  SolutionState state{{1.0}, 1.0};
  Rng rng(1);

  // search range starts at 0.2 * 2.5 = 0.5; two downward probes land exactly
  // on 0.5 and then 0.0
  CHECK(run_once(ls1, objective, meter, state, rng, 2.0) == 2.0);
  CHECK(state.y_best == 0.0);
  CHECK(state.x_best[0] == 0.0);
  nlohmann::json after = ls1.snapshot();
  CHECK(after.at("search_ranges") == nlohmann::json::array({0.5}));
  CHECK(after.at("cursor") == 0);
  CHECK(after.at("phase") == 0);
  CHECK(after.at("improved_this_pass") == false);

  // at the optimum both probes of a pass fail, halving the range each pass
  CHECK(run_once(ls1, objective, meter, state, rng, 4.0) == 4.0);
  CHECK(state.y_best == 0.0);
  CHECK(ls1.snapshot().at("search_ranges") == nlohmann::json::array({0.125}));
}

TEST_CASE("ls1 spends exactly its allowance, one probe at a time") {
  FunctionObjective objective = make_sphere(3);
  ResourceMeter meter(ResourceKind::Evaluations, 100.0);
  Ls1 ls1;
  SolutionState state{{1.0, 2.0, 3.0}, 14.0};
  Rng rng(1);
  CHECK(run_once(ls1, objective, meter, state, rng, 1.0) == 1.0);
  CHECK(meter.consumed() == 1.0);
  CHECK(run_once(ls1, objective, meter, state, rng, 7.0) == 7.0);
  CHECK(meter.consumed() == 8.0);
}

TEST_CASE("ls1 probes clamped at the boundary still cost one evaluation") {
  FunctionObjective objective(
      [](std::span<const double> x) { return x[0] * x[0]; }, Box::cube(1, -1.25, 1.25));
  ResourceMeter meter(ResourceKind::Evaluations, 10.0);
  Ls1 ls1;
  SolutionState state{{-1.25}, 1.5625};
  Rng rng(1);
  // the downward probe clamps onto the incumbent itself and cannot improve
  CHECK(run_once(ls1, objective, meter, state, rng, 1.0) == 1.0);
  CHECK(state.x_best[0] == -1.25);
  CHECK(state.y_best == 1.5625);
}

TEST_CASE("ls1 search ranges reset once they fall below the floor") {
  // floor 0.1 * range = 0.25: one failed pass halves 0.5 -> 0.25, the next
  // pass would halve below the floor and snaps back to 0.5
  FunctionObjective objective(
      [](std::span<const double> x) { return x[0] * x[0]; }, Box::cube(1, -1.25, 1.25));
  ResourceMeter meter(ResourceKind::Evaluations, 100.0);
  Ls1 ls1(Ls1Config{0.2, 0.1});
  SolutionState state{{0.0}, 0.0};
  Rng rng(1);

  run_once(ls1, objective, meter, state, rng, 2.0);
  CHECK(ls1.search_ranges() == std::vector<double>{0.25});
  run_once(ls1, objective, meter, state, rng, 2.0);
  CHECK(ls1.search_ranges() == std::vector<double>{0.5});
}

TEST_CASE("ls1 is indifferent to how its budget is split") {
  FunctionObjective objective(
      [](std::span<const double> x) {
        double sum = 0.0;
        for (double v : x) sum += (v - 0.3) * (v - 0.3);
        return sum;
      },
      Box::cube(3, -2.0, 4.0));
  std::vector<double> x0{3.5, -1.0, 0.25};
  double y0 = 0.0;
  for (double v : x0) y0 += (v - 0.3) * (v - 0.3);

  Ls1 whole, split;
  SolutionState state_whole{x0, y0}, state_split{x0, y0};
  ResourceMeter meter(ResourceKind::Evaluations, 1000.0);
  Rng rng(1);

  run_once(whole, objective, meter, state_whole, rng, 10.0);
  run_once(split, objective, meter, state_split, rng, 4.0);
  run_once(split, objective, meter, state_split, rng, 6.0);

  CHECK(state_whole.x_best == state_split.x_best);
  CHECK(state_whole.y_best == state_split.y_best);
  CHECK(whole.snapshot() == split.snapshot());
}

TEST_CASE("cc validates its configuration") {
  CHECK_THROWS_AS(Cc(CcConfig{.np = 3}), std::invalid_argument);
  CHECK_THROWS_AS(Cc(CcConfig{.f = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Cc(CcConfig{.cr = 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(Cc(CcConfig{.cr = -0.1}), std::invalid_argument);
}

TEST_CASE("default group size is half the dimension capped at 100") {
  CHECK(default_group_size(1) == 1);
  CHECK(default_group_size(7) == 4);
  CHECK(default_group_size(199) == 100);
  CHECK(default_group_size(200) == 100);
  CHECK(default_group_size(1000) == 100);
}

TEST_CASE("random grouping partitions the indices") {
  Rng rng(3);
  CHECK_THROWS_AS(random_grouping(0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_grouping(5, 0, rng), std::invalid_argument);

  for (int round = 0; round < 300; ++round) {
    std::size_t dimension = uniform_index(rng, 1, 40);
    std::size_t size = uniform_index(rng, 1, 12);
    auto groups = random_grouping(dimension, size, rng);
    std::set<std::size_t> seen;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::size_t expected = g + 1 < groups.size() ? size : dimension - g * size;
      CHECK(groups[g].size() == expected);
      for (std::size_t index : groups[g]) {
        CHECK(index < dimension);
        CHECK(seen.insert(index).second);
      }
    }
    CHECK(seen.size() == dimension);
  }
}

TEST_CASE("cc improves monotonically and spends exactly its allowance") {
  BenchmarkProblem problem = make_problem(FunctionId::Rosenbrock, 6, std::uint64_t{3});
  ResourceMeter meter(ResourceKind::Evaluations, 10000.0);
  Cc cc(CcConfig{.np = 8});
  Rng rng(5);
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  SolutionState state{x0, problem.evaluate(x0)};

  double y0 = state.y_best;
  double previous = y0;
  for (int i = 0; i < 12; ++i) {
    CHECK(run_once(cc, problem, meter, state, rng, 20.0) == 20.0);
    CHECK(state.y_best <= previous);
    previous = state.y_best;
  }
  CHECK(state.y_best < y0);  // actually moved
}

TEST_CASE("cc seeds each group population with the incumbent slice unevaluated") {
  BenchmarkProblem problem = make_problem(FunctionId::Sphere, 6, std::uint64_t{5});
  ResourceMeter meter(ResourceKind::Evaluations, 1000.0);
  Cc cc(CcConfig{.np = 8});
  Rng rng(9);
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  double y0 = problem.evaluate(x0);
  SolutionState state{x0, y0};

  // allowance np - 1: the first group finishes initialization exactly,
  // member 0 being the free incumbent slice
  run_once(cc, problem, meter, state, rng, 7.0);
  nlohmann::json snapshot = cc.snapshot();
  const nlohmann::json& pop = snapshot.at("populations").at(0);
  CHECK(pop.at("ready") == 8);
  CHECK(pop.at("fitness").at(0).get<double>() == y0);
  const nlohmann::json& group = snapshot.at("groups").at(0);
  for (std::size_t j = 0; j < group.size(); ++j) {
    CHECK(pop.at("members").at(0).at(j).get<double>() == x0[group.at(j).get<std::size_t>()]);
  }
}

TEST_CASE("cc redraws its decomposition every initiation") {
  BenchmarkProblem problem = make_problem(FunctionId::Sphere, 30, std::uint64_t{5});
  ResourceMeter meter(ResourceKind::Evaluations, 10000.0);
  Cc cc;
  Rng rng(11);
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  SolutionState state{x0, problem.evaluate(x0)};

  run_once(cc, problem, meter, state, rng, 30.0);
  nlohmann::json first = cc.snapshot().at("groups");
  run_once(cc, problem, meter, state, rng, 30.0);
  nlohmann::json second = cc.snapshot().at("groups");
  CHECK(first != second);
  // populations were discarded with the old grouping: only the fresh
  // initiation's work is present
  const nlohmann::json& populations = cc.snapshot().at("populations");
  std::size_t ready_total = 0;
  for (const auto& pop : populations) {
    if (!pop.at("fitness").empty()) ready_total += pop.at("ready").get<std::size_t>();
  }
  CHECK(ready_total <= 31);
}

TEST_CASE("gs validates its configuration") {
  CHECK_THROWS_AS(Gs(GsConfig{.np = 4}), std::invalid_argument);
  CHECK_THROWS_AS(Gs(GsConfig{.p = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Gs(GsConfig{.p = 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(Gs(GsConfig{.history = 0}), std::invalid_argument);
}

TEST_CASE("gs first initiation evaluates the whole population") {
  BenchmarkProblem problem = make_problem(FunctionId::Sphere, 3, std::uint64_t{5});
  ResourceMeter meter(ResourceKind::Evaluations, 1000.0);
  Gs gs(GsConfig{.np = 6});
  Rng rng(13);
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  double y0 = problem.evaluate(x0);
  SolutionState state{x0, y0};

  CHECK(run_once(gs, problem, meter, state, rng, 6.0) == 6.0);
  REQUIRE(gs.population().size() == 6);
  CHECK(gs.population()[0] == x0);
  CHECK(gs.fitness()[0] == y0);
  double best = *std::min_element(gs.fitness().begin(), gs.fitness().end());
  CHECK(state.y_best == best);
}

TEST_CASE("gs with zero differential weight leaves the population fixed") {
  BenchmarkProblem problem = make_problem(FunctionId::Rastrigin, 4, std::uint64_t{7});
  ResourceMeter meter(ResourceKind::Evaluations, 1000.0);
  GsConfig config{.np = 8};
  config.f_override = 0.0;
  config.cr_override = 1.0;
  Gs gs(config);
  Rng rng(17);
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  SolutionState state{x0, problem.evaluate(x0)};

  run_once(gs, problem, meter, state, rng, 8.0);
  nlohmann::json before = gs.snapshot();
  run_once(gs, problem, meter, state, rng, 8.0);  // one full identity generation
  nlohmann::json after = gs.snapshot();
  CHECK(after.at("population") == before.at("population"));
  CHECK(after.at("fitness") == before.at("fitness"));
  CHECK(after.at("archive").empty());
  CHECK(after.at("memory_f") == before.at("memory_f"));
}

TEST_CASE("gs archive never outgrows the population") {
  BenchmarkProblem problem = make_problem(FunctionId::Rastrigin, 5, std::uint64_t{3});
  ResourceMeter meter(ResourceKind::Evaluations, 100000.0);
  Gs gs(GsConfig{.np = 6});
  Rng rng(19);
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  SolutionState state{x0, problem.evaluate(x0)};

  for (int i = 0; i < 40; ++i) {
    run_once(gs, problem, meter, state, rng, 30.0);
    CHECK(gs.archive_size() <= 6);
  }
  CHECK(gs.archive_size() > 0);
}

TEST_CASE("gs is indifferent to how its budget is split") {
  BenchmarkProblem problem = make_problem(FunctionId::Rastrigin, 4, std::uint64_t{21});
  Rng seed_rng(23);
  std::vector<double> x0 = problem.bounds().sample_uniform(seed_rng);
  double y0 = problem.evaluate(x0);

  Gs whole(GsConfig{.np = 6}), split(GsConfig{.np = 6});
  SolutionState state_whole{x0, y0}, state_split{x0, y0};
  ResourceMeter meter(ResourceKind::Evaluations, 10000.0);
  Rng rng_whole(29), rng_split(29);

  run_once(whole, problem, meter, state_whole, rng_whole, 13.0);
  run_once(split, problem, meter, state_split, rng_split, 6.0);
  run_once(split, problem, meter, state_split, rng_split, 7.0);

  CHECK(state_whole.x_best == state_split.x_best);
  CHECK(state_whole.y_best == state_split.y_best);
  CHECK(whole.snapshot() == split.snapshot());
}

TEST_CASE("interleaved foreign initiations leave gs state untouched") {
  BenchmarkProblem problem = make_problem(FunctionId::Sphere, 4, std::uint64_t{25});
  Rng seed_rng(31);
  std::vector<double> x0 = problem.bounds().sample_uniform(seed_rng);
  double y0 = problem.evaluate(x0);

  Gs plain(GsConfig{.np = 6}), interleaved(GsConfig{.np = 6});
  IdleProbe idle;
  SolutionState state_plain{x0, y0}, state_mixed{x0, y0};
  ResourceMeter meter(ResourceKind::Evaluations, 10000.0);
  Rng rng_plain(37), rng_mixed(37), rng_idle(41);

  run_once(plain, problem, meter, state_plain, rng_plain, 10.0);
  run_once(plain, problem, meter, state_plain, rng_plain, 10.0);

  run_once(interleaved, problem, meter, state_mixed, rng_mixed, 10.0);
  run_once(idle, problem, meter, state_mixed, rng_idle, 5.0);
  run_once(interleaved, problem, meter, state_mixed, rng_mixed, 10.0);

  CHECK(plain.snapshot() == interleaved.snapshot());
  CHECK(state_plain.y_best == state_mixed.y_best);
}

TEST_CASE("each heuristic solves a 2-d shifted sphere on its own") {
  auto solve = [](std::string_view which, std::uint64_t seed) {
    BenchmarkProblem problem = make_problem(FunctionId::Sphere, 2, std::uint64_t{11});
    ResourceMeter meter(ResourceKind::Evaluations, 10000.0);
    Rng rng(seed);
    std::vector<double> x0 = problem.bounds().sample_uniform(rng);
    SolutionState state{x0, problem.evaluate(x0)};
    Ls1 ls1;
    Cc cc;
    Gs gs;
    Heuristic& heuristic = which == "ls1" ? static_cast<Heuristic&>(ls1)
                          : which == "cc" ? static_cast<Heuristic&>(cc)
                                          : static_cast<Heuristic&>(gs);
    run_once(heuristic, problem, meter, state, rng, 10000.0);
    return state.y_best;
  };

  for (std::string_view which : {"ls1", "cc", "gs"}) {
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      if (solve(which, seed) < 1e-6) ++solved;
    }
    INFO(which);
    CHECK(solved >= 19);
  }
}
