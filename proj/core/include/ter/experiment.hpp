#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ter/align.hpp"
#include "ter/controller.hpp"
#include "ter/problems.hpp"

namespace ter {

struct ProblemSpec {
  FunctionId function = FunctionId::Sphere;
  std::size_t dimension = 100;
};

// Directory-safe cell name, e.g. "sphere_d100".
std::string problem_label(const ProblemSpec& spec);

// "ter", "random", or "single:<heuristic>"; single policies always play the
// named heuristic but keep the full action set so action ids and resource
// allotments match across policies.
struct PolicySpec {
  PolicyKind kind = PolicyKind::Ter;
  std::string single_action;
  std::string label = "ter";
};

PolicySpec parse_policy(std::string_view text);

struct ExperimentConfig {
  std::vector<ProblemSpec> problems;
  std::vector<PolicySpec> policies;
  std::vector<std::string> actions = {"ls1", "cc", "gs"};
  double tau = 0.2;
  std::size_t window = 5;
  // budget > 0 is absolute; otherwise budget_factor * dimension evaluations.
  double budget = 0.0;
  double budget_factor = 5000.0;
  // Per-initiation allotment is allotment_factor * dimension evaluations,
  // unless a heuristic's override section pins an absolute `allotment`.
  double allotment_factor = 25.0;
  std::size_t runs = 20;
  std::uint64_t base_seed = 1;
  std::uint64_t shift_seed = 7;
  std::filesystem::path shift_file;
  std::filesystem::path out_dir;
  double alpha = 0.05;
  AlignmentScoring scoring;
  // Per-heuristic config sections keyed by heuristic name.
  nlohmann::json overrides = nlohmann::json::object();
};

// Applies config-file keys (tau, window, actions, alpha, budget,
// budget_factor, allotment_factor, scoring, per-heuristic sections) on top of
// the given defaults. Flags parsed later still win over the file.
ExperimentConfig apply_config_json(ExperimentConfig config, const nlohmann::json& j);

std::unique_ptr<Heuristic> make_heuristic(std::string_view name, const nlohmann::json& overrides);

// The action set an experiment plays: every configured heuristic with its
// per-initiation allotment for the given dimension.
std::vector<ActionSpec> make_action_set(const ExperimentConfig& config, std::size_t dimension);

struct CellResult {
  ProblemSpec problem;
  PolicySpec policy;
  std::vector<RunRecord> records;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  nlohmann::json report;
};

// Executes runs * |problems| * |policies| seeded runs (run i uses seed
// base_seed + i; the start point depends only on the seed, so policies pair
// run-for-run), persists every record when out_dir is set, and assembles the
// comparison report. Independent runs execute concurrently across
// worker_count() threads.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Mean/std summaries, pairwise t-test strings, the Friedman ranking, and
// per-problem decision-sequence similarity matrices; a pure function of the
// records.
nlohmann::json build_report(const std::vector<CellResult>& cells, double alpha,
                            const AlignmentScoring& scoring);

// Reads every run_*.json under dir (the run_experiment layout) and rebuilds
// cells plus the report.
ExperimentResult load_experiment(const std::filesystem::path& dir, double alpha = 0.05,
                                 const AlignmentScoring& scoring = {});

// report.json, summary/t-test/friedman/similarity CSV tables, and one curve
// CSV per run.
void write_report_files(const ExperimentResult& result, const std::filesystem::path& dir);

// TER_WORKERS when set (minimum 1), hardware concurrency otherwise.
std::size_t worker_count();

}  // namespace ter
