#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ter/bounds.hpp"
#include "ter/experiment.hpp"

namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int run_command(const ter::ExperimentConfig& config) {
  ter::ExperimentResult result = ter::run_experiment(config);
  for (const nlohmann::json& row : result.report.at("summary")) {
    std::printf("%s %s: mean error %.6g (std %.6g) over %zu runs\n",
                row.at("problem").get<std::string>().c_str(),
                row.at("policy").get<std::string>().c_str(),
                row.at("mean_error").get<double>(), row.at("std_error").get<double>(),
                row.at("runs").get<std::size_t>());
  }
  if (!config.out_dir.empty()) {
    std::printf("records and report written under %s\n", config.out_dir.string().c_str());
  }
  return 0;
}

int bounds_command(std::size_t actions, std::size_t window, double tau) {
  ter::ExplorationBounds bounds = ter::exploration_bounds(actions, window, tau);
  std::printf("actions=%zu window=%zu tau=%g\n", actions, window, tau);
  std::printf("lower:            %.12g\n", bounds.lower);
  std::printf("upper:            %.12g\n", bounds.upper);
  std::printf("complement_lower: %.12g\n", bounds.complement_lower);
  nlohmann::json j{
      {"actions", actions},
      {"window", window},
      {"tau", tau},
      {"lower", bounds.lower},
      {"upper", bounds.upper},
      {"complement_lower", bounds.complement_lower},
  };
  std::printf("%s\n", j.dump().c_str());
  return 0;
}

int solve_command(double p_min, double p_max, std::size_t actions) {
  auto candidates = ter::solve_hyperparameters(p_min, p_max, actions);
  if (candidates.empty()) {
    std::printf("no feasible <tau, window> candidates for [%g, %g] with %zu actions\n", p_min,
                p_max, actions);
  }
  nlohmann::json j = nlohmann::json::array();
  for (const ter::HyperparameterCandidate& c : candidates) {
    std::printf("tau=1/%d window=%zu\n", c.k, c.window);
    j.push_back({{"tau", c.tau}, {"k", c.k}, {"window", c.window}});
  }
  std::printf("%s\n", j.dump().c_str());
  return 0;
}

int report_command(const std::string& in_dir, double alpha, const ter::AlignmentScoring& scoring) {
  ter::ExperimentResult result = ter::load_experiment(in_dir, alpha, scoring);
  ter::write_report_files(result, in_dir);
  std::size_t runs = 0;
  for (const ter::CellResult& cell : result.cells) runs += cell.records.size();
  std::printf("%zu runs across %zu cells; report written to %s/report.json\n", runs,
              result.cells.size(), in_dir.c_str());
  for (const nlohmann::json& pair : result.report.at("t_tests")) {
    std::printf("%s vs %s: %s\n", pair.at("a").get<std::string>().c_str(),
                pair.at("b").get<std::string>().c_str(),
                pair.at("string").get<std::string>().c_str());
  }
  if (!result.report.at("friedman").is_null()) {
    const nlohmann::json& friedman = result.report.at("friedman");
    std::printf("friedman: statistic %.6g, p %.6g\n", friedman.at("statistic").get<double>(),
                friedman.at("p_value").get<double>());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource-metered heuristic portfolio optimizer"};
  app.require_subcommand(1);

  // run
  std::string problem = "sphere";
  std::size_t dim = 100;
  double budget_factor = 5000.0;
  double budget = 0.0;
  std::string policy = "ter";
  double tau = 0.2;
  std::size_t window = 5;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  std::uint64_t shift_seed = 7;
  std::string shift_file;
  std::string out_dir;
  std::string config_file;

  CLI::App* run = app.add_subcommand("run", "Execute seeded optimization runs");
  run->add_option("--problem", problem,
                  "Benchmark function: sphere, schwefel221, rosenbrock, rastrigin, griewank, ackley");
  run->add_option("--dim", dim, "Problem dimensionality");
  run->add_option("--budget-factor", budget_factor, "Evaluation budget as a multiple of --dim");
  run->add_option("--budget", budget, "Absolute evaluation budget (overrides --budget-factor)");
  run->add_option("--policy", policy, "ter, random, or single:<heuristic>");
  run->add_option("--tau", tau, "Softmax temperature");
  run->add_option("--window", window, "Efficiency window size");
  run->add_option("--runs", runs, "Independent runs (run i is seeded base seed + i)");
  run->add_option("--seed", seed, "Base RNG seed");
  run->add_option("--shift-seed", shift_seed, "Seed for the benchmark shift vector");
  run->add_option("--shift-file", shift_file,
                  "Shift vector file, one value per line (overrides --shift-seed)");
  run->add_option("--out", out_dir, "Output directory for run records and the report");
  run->add_option("--config", config_file,
                  "JSON config file (tau, window, actions, scoring, per-heuristic sections)");

  // bounds
  std::size_t b_actions = 3;
  double b_tau = 0.2;
  std::size_t b_window = 5;
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the selection-probability bounds");
  bounds->add_option("--actions", b_actions, "Action count");
  bounds->add_option("--tau", b_tau, "Softmax temperature");
  bounds->add_option("--window", b_window, "Efficiency window size");

  // solve-hparams
  double p_min = 0.5;
  double p_max = 0.99;
  std::size_t s_actions = 3;
  CLI::App* solve = app.add_subcommand(
      "solve-hparams", "Invert the bounds into <tau, window> candidates");
  solve->add_option("--pmin", p_min, "Exploitation probability floor");
  solve->add_option("--pmax", p_max, "Exploitation probability cap");
  solve->add_option("--actions", s_actions, "Action count");

  // report
  std::string in_dir;
  double r_alpha = 0.05;
  ter::AlignmentScoring scoring;
  CLI::App* report = app.add_subcommand("report", "Rebuild the report from stored run records");
  report->add_option("--in", in_dir, "Directory holding run_*.json records")->required();
  report->add_option("--alpha", r_alpha, "Significance level for the t-tests");
  report->add_option("--match", scoring.match, "Alignment match score");
  report->add_option("--mismatch", scoring.mismatch, "Alignment mismatch score");
  report->add_option("--gap", scoring.gap, "Alignment gap score");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ter::ExperimentConfig config;
      if (!config_file.empty()) {
        config = ter::apply_config_json(std::move(config), load_json_file(config_file));
      }
      if (run->count("--tau")) config.tau = tau;
      if (run->count("--window")) config.window = window;
      if (run->count("--budget-factor")) config.budget_factor = budget_factor;
      if (run->count("--budget")) config.budget = budget;
      config.problems = {ter::ProblemSpec{ter::function_from_name(problem), dim}};
      config.policies = {ter::parse_policy(policy)};
      config.runs = runs;
      config.base_seed = seed;
      config.shift_seed = shift_seed;
      config.shift_file = shift_file;
      config.out_dir = out_dir;
      return run_command(config);
    }
    if (bounds->parsed()) return bounds_command(b_actions, b_window, b_tau);
    if (solve->parsed()) return solve_command(p_min, p_max, s_actions);
    if (report->parsed()) return report_command(in_dir, r_alpha, scoring);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
