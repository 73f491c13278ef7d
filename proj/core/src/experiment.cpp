#include "ter/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ter/cc.hpp"
#include "ter/gs.hpp"
#include "ter/ls1.hpp"
#include "ter/stats.hpp"

namespace ter {
namespace {

std::string shortest_repr(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

std::string policy_dir_name(const std::string& label) {
  std::string name = label;
  std::replace(name.begin(), name.end(), ':', '_');
  return name;
}

std::size_t fixed_action_index(const std::vector<std::string>& actions,
                               const PolicySpec& policy) {
  auto it = std::find(actions.begin(), actions.end(), policy.single_action);
  if (it == actions.end()) {
    throw std::invalid_argument("policy '" + policy.label + "' names a heuristic outside the action set");
  }
  return static_cast<std::size_t>(it - actions.begin());
}

double cell_budget(const ExperimentConfig& config, std::size_t dimension) {
  return config.budget > 0.0 ? config.budget
                             : config.budget_factor * static_cast<double>(dimension);
}

nlohmann::json run_config_snapshot(const ExperimentConfig& config, const ProblemSpec& problem,
                                   const PolicySpec& policy, std::size_t run_index) {
  nlohmann::json j{
      {"problem", function_name(problem.function)},
      {"dimension", problem.dimension},
      {"policy", policy.label},
      {"run_index", run_index},
      {"budget", cell_budget(config, problem.dimension)},
      {"resource", resource_kind_name(ResourceKind::Evaluations)},
      {"tau", config.tau},
      {"window", config.window},
      {"actions", config.actions},
      {"allotment_factor", config.allotment_factor},
      {"base_seed", config.base_seed},
      {"alpha", config.alpha},
      {"scoring", {{"match", config.scoring.match},
                   {"mismatch", config.scoring.mismatch},
                   {"gap", config.scoring.gap}}},
      {"overrides", config.overrides},
  };
  if (!config.shift_file.empty()) {
    j["shift_file"] = config.shift_file.string();
  } else {
    j["shift_seed"] = config.shift_seed;
  }
  return j;
}

RunRecord execute_run(const ExperimentConfig& config, const ProblemSpec& spec,
                      const std::vector<double>& shift, const PolicySpec& policy,
                      std::size_t run_index) {
  BenchmarkProblem problem(spec.function, shift);
  std::uint64_t seed = config.base_seed + run_index;
  Rng rng(seed);

  // The start point depends only on the run seed, drawn before any policy or
  // heuristic stream, so every policy starts run i from the same point.
  std::vector<double> x0 = problem.bounds().sample_uniform(rng);
  ResourceMeter meter(ResourceKind::Evaluations, cell_budget(config, spec.dimension));
  meter.consume(1.0);
  double y0 = problem.evaluate(x0);

  std::vector<ActionSpec> actions = make_action_set(config, spec.dimension);
  ControllerConfig controller;
  controller.policy = policy.kind;
  controller.tau = config.tau;
  controller.window = config.window;
  if (policy.kind == PolicyKind::Fixed) {
    controller.fixed_action = fixed_action_index(config.actions, policy);
  }

  OptimizeResult result = run_controller(problem, actions, meter, controller,
                                         SolutionState{std::move(x0), y0}, rng);
  result.record.seed = seed;
  result.record.config = run_config_snapshot(config, spec, policy, run_index);
  return std::move(result.record);
}

double mean_of(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return values.empty() ? 0.0 : total / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = mean_of(values);
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

nlohmann::json finite_or_repr(double v) {
  if (std::isfinite(v)) return v;
  return shortest_repr(v);
}

}  // namespace

std::string problem_label(const ProblemSpec& spec) {
  return std::string(function_name(spec.function)) + "_d" + std::to_string(spec.dimension);
}

PolicySpec parse_policy(std::string_view text) {
  PolicySpec spec;
  spec.label = std::string(text);
  if (text == "ter") {
    spec.kind = PolicyKind::Ter;
    return spec;
  }
  if (text == "random") {
    spec.kind = PolicyKind::Random;
    return spec;
  }
  constexpr std::string_view prefix = "single:";
  if (text.substr(0, prefix.size()) == prefix && text.size() > prefix.size()) {
    spec.kind = PolicyKind::Fixed;
    spec.single_action = std::string(text.substr(prefix.size()));
    return spec;
  }
  throw std::invalid_argument("unknown policy '" + std::string(text) +
                              "' (expected ter, random, or single:<heuristic>)");
}

ExperimentConfig apply_config_json(ExperimentConfig config, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  if (j.contains("tau")) config.tau = j.at("tau").get<double>();
  if (j.contains("window")) config.window = j.at("window").get<std::size_t>();
  if (j.contains("actions")) config.actions = j.at("actions").get<std::vector<std::string>>();
  if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
  if (j.contains("budget")) config.budget = j.at("budget").get<double>();
  if (j.contains("budget_factor")) config.budget_factor = j.at("budget_factor").get<double>();
  if (j.contains("allotment_factor")) {
    config.allotment_factor = j.at("allotment_factor").get<double>();
  }
  if (j.contains("scoring")) {
    const nlohmann::json& s = j.at("scoring");
    config.scoring.match = s.value("match", config.scoring.match);
    config.scoring.mismatch = s.value("mismatch", config.scoring.mismatch);
    config.scoring.gap = s.value("gap", config.scoring.gap);
  }
  for (const std::string& name : config.actions) {
    if (j.contains(name)) config.overrides[name] = j.at(name);
  }
  return config;
}

std::unique_ptr<Heuristic> make_heuristic(std::string_view name, const nlohmann::json& overrides) {
  nlohmann::json section = nlohmann::json::object();
  if (overrides.is_object()) {
    auto it = overrides.find(name);
    if (it != overrides.end()) section = *it;
  }

  if (name == "ls1") {
    Ls1Config config;
    config.initial_range_factor = section.value("initial_range_factor", config.initial_range_factor);
    config.reset_floor_factor = section.value("reset_floor_factor", config.reset_floor_factor);
    return std::make_unique<Ls1>(config);
  }
  if (name == "cc") {
    CcConfig config;
    config.group_size = section.value("group_size", config.group_size);
    config.np = section.value("np", config.np);
    config.f = section.value("f", config.f);
    config.cr = section.value("cr", config.cr);
    return std::make_unique<Cc>(config);
  }
  if (name == "gs") {
    GsConfig config;
    config.np = section.value("np", config.np);
    config.p = section.value("p", config.p);
    config.history = section.value("history", config.history);
    if (section.contains("f_override")) config.f_override = section.at("f_override").get<double>();
    if (section.contains("cr_override")) {
      config.cr_override = section.at("cr_override").get<double>();
    }
    return std::make_unique<Gs>(config);
  }
  throw std::invalid_argument("unknown heuristic '" + std::string(name) +
                              "' (expected ls1, cc, or gs)");
}

std::vector<ActionSpec> make_action_set(const ExperimentConfig& config, std::size_t dimension) {
  if (config.actions.empty()) throw std::invalid_argument("the action set is empty");
  std::vector<ActionSpec> actions;
  actions.reserve(config.actions.size());
  for (const std::string& name : config.actions) {
    ActionSpec spec;
    spec.heuristic = make_heuristic(name, config.overrides);
    spec.per_initiation_budget = config.allotment_factor * static_cast<double>(dimension);
    if (config.overrides.is_object() && config.overrides.contains(name)) {
      spec.per_initiation_budget =
          config.overrides.at(name).value("allotment", spec.per_initiation_budget);
    }
    actions.push_back(std::move(spec));
  }
  return actions;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("TER_WORKERS")) {
    char* end = nullptr;
    long workers = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || workers < 1) {
      throw std::runtime_error("TER_WORKERS must be a positive integer");
    }
    return static_cast<std::size_t>(workers);
  }
  unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : hardware;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.problems.empty()) throw std::invalid_argument("no problems configured");
  if (config.policies.empty()) throw std::invalid_argument("no policies configured");
  if (config.runs < 1) throw std::invalid_argument("need at least one run");
  if (!(config.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (config.window < 1) throw std::invalid_argument("window must be at least 1");
  for (const PolicySpec& policy : config.policies) {
    if (policy.kind == PolicyKind::Fixed) fixed_action_index(config.actions, policy);
  }

  std::vector<std::vector<double>> shifts;
  shifts.reserve(config.problems.size());
  for (const ProblemSpec& problem : config.problems) {
    shifts.push_back(config.shift_file.empty()
                         ? shift_from_seed(problem.function, problem.dimension, config.shift_seed)
                         : shift_from_file(problem.function, problem.dimension, config.shift_file));
  }

  ExperimentResult result;
  for (const ProblemSpec& problem : config.problems) {
    for (const PolicySpec& policy : config.policies) {
      CellResult cell;
      cell.problem = problem;
      cell.policy = policy;
      cell.records.resize(config.runs);
      result.cells.push_back(std::move(cell));
    }
  }

  // Output directories are prepared before any run starts so a bad path
  // fails immediately.
  bool persist = !config.out_dir.empty();
  if (persist) {
    for (const CellResult& cell : result.cells) {
      std::filesystem::create_directories(config.out_dir / problem_label(cell.problem) /
                                          policy_dir_name(cell.policy.label));
    }
  }

  struct Task {
    std::size_t cell;
    std::size_t run;
  };
  std::vector<Task> tasks;
  tasks.reserve(result.cells.size() * config.runs);
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    for (std::size_t r = 0; r < config.runs; ++r) tasks.push_back(Task{c, r});
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error) return;
      }
      try {
        const Task& task = tasks[index];
        CellResult& cell = result.cells[task.cell];
        std::size_t problem_index = task.cell / config.policies.size();
        RunRecord record = execute_run(config, cell.problem, shifts[problem_index],
                                       cell.policy, task.run);
        if (persist) {
          std::filesystem::path path = config.out_dir / problem_label(cell.problem) /
                                       policy_dir_name(cell.policy.label) /
                                       ("run_" + std::to_string(task.run) + ".json");
          save_run_record(record, path);
        }
        cell.records[task.run] = std::move(record);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::size_t workers = std::min(worker_count(), tasks.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& thread : pool) thread.join();
  }
  if (error) std::rethrow_exception(error);

  result.report = build_report(result.cells, config.alpha, config.scoring);
  if (persist) write_report_files(result, config.out_dir);
  return result;
}

nlohmann::json build_report(const std::vector<CellResult>& cells, double alpha,
                            const AlignmentScoring& scoring) {
  // Canonical order keeps the report a pure function of the records, not of
  // the iteration order they were produced or loaded in.
  std::vector<const CellResult*> ordered;
  ordered.reserve(cells.size());
  for (const CellResult& cell : cells) ordered.push_back(&cell);
  std::sort(ordered.begin(), ordered.end(), [](const CellResult* a, const CellResult* b) {
    std::string pa = problem_label(a->problem), pb = problem_label(b->problem);
    return pa != pb ? pa < pb : a->policy.label < b->policy.label;
  });

  std::vector<std::string> problems;
  std::vector<std::string> policies;
  std::map<std::string, std::map<std::string, const CellResult*>> grid;
  for (const CellResult* cell : ordered) {
    std::string problem = problem_label(cell->problem);
    if (std::find(problems.begin(), problems.end(), problem) == problems.end()) {
      problems.push_back(problem);
    }
    if (std::find(policies.begin(), policies.end(), cell->policy.label) == policies.end()) {
      policies.push_back(cell->policy.label);
    }
    if (!grid[problem].emplace(cell->policy.label, cell).second) {
      throw std::invalid_argument("duplicate cell for " + problem + " / " + cell->policy.label);
    }
  }

  auto cell_errors = [](const CellResult& cell) {
    std::vector<double> errors;
    errors.reserve(cell.records.size());
    for (const RunRecord& record : cell.records) errors.push_back(record.final_y());
    return errors;
  };

  nlohmann::json summary = nlohmann::json::array();
  std::map<std::string, std::map<std::string, double>> means;
  for (const std::string& problem : problems) {
    for (const std::string& policy : policies) {
      auto it = grid[problem].find(policy);
      if (it == grid[problem].end()) continue;
      const CellResult& cell = *it->second;
      std::vector<double> errors = cell_errors(cell);
      double lengths = 0.0, consumed = 0.0;
      for (const RunRecord& record : cell.records) {
        lengths += static_cast<double>(record.action_sequence.size());
        consumed += record.consumed;
      }
      double count = static_cast<double>(cell.records.size());
      means[problem][policy] = mean_of(errors);
      summary.push_back({
          {"problem", problem},
          {"policy", policy},
          {"runs", cell.records.size()},
          {"mean_error", mean_of(errors)},
          {"std_error", sample_std(errors)},
          {"mean_consumed", count > 0.0 ? consumed / count : 0.0},
          {"mean_sequence_length", count > 0.0 ? lengths / count : 0.0},
      });
    }
  }

  nlohmann::json t_tests = nlohmann::json::array();
  for (std::size_t i = 0; i < policies.size(); ++i) {
    for (std::size_t j = i + 1; j < policies.size(); ++j) {
      nlohmann::json per_problem = nlohmann::json::object();
      std::size_t less = 0, indistinct = 0, greater = 0;
      for (const std::string& problem : problems) {
        auto a = grid[problem].find(policies[i]);
        auto b = grid[problem].find(policies[j]);
        if (a == grid[problem].end() || b == grid[problem].end()) continue;
        const CellResult& ca = *a->second;
        const CellResult& cb = *b->second;
        if (ca.records.size() != cb.records.size() || ca.records.size() < 2) continue;
        bool paired = true;
        for (std::size_t r = 0; r < ca.records.size(); ++r) {
          if (ca.records[r].seed != cb.records[r].seed) paired = false;
        }
        if (!paired) continue;
        TtestResult test = paired_t_test(cell_errors(ca), cell_errors(cb), alpha);
        switch (test.verdict) {
          case TtestVerdict::FirstSmaller: ++less; break;
          case TtestVerdict::Indistinct: ++indistinct; break;
          case TtestVerdict::FirstGreater: ++greater; break;
        }
        per_problem[problem] = {
            {"verdict", ttest_verdict_symbol(test.verdict)},
            {"t", finite_or_repr(test.t)},
            {"p", test.p},
        };
      }
      if (per_problem.empty()) continue;
      t_tests.push_back({
          {"a", policies[i]},
          {"b", policies[j]},
          {"per_problem", std::move(per_problem)},
          {"counts", {{"less", less}, {"indistinct", indistinct}, {"greater", greater}}},
          {"string", std::to_string(less) + "/" + std::to_string(indistinct) + "/" +
                         std::to_string(greater)},
      });
    }
  }

  nlohmann::json friedman = nullptr;
  if (problems.size() >= 2) {
    std::vector<std::string> common;
    for (const std::string& policy : policies) {
      bool everywhere = true;
      for (const std::string& problem : problems) {
        if (grid[problem].find(policy) == grid[problem].end()) everywhere = false;
      }
      if (everywhere) common.push_back(policy);
    }
    if (common.size() >= 2) {
      std::vector<std::vector<double>> matrix(common.size());
      for (std::size_t i = 0; i < common.size(); ++i) {
        for (const std::string& problem : problems) {
          matrix[i].push_back(means[problem][common[i]]);
        }
      }
      FriedmanResult result = friedman_test(matrix);
      nlohmann::json ranks = nlohmann::json::object();
      for (std::size_t i = 0; i < common.size(); ++i) {
        ranks[common[i]] = result.mean_ranks[i];
      }
      friedman = {
          {"statistic", result.statistic},
          {"p_value", result.p},
          {"mean_ranks", std::move(ranks)},
      };
    }
  }

  nlohmann::json similarity = nlohmann::json::object();
  for (const std::string& problem : problems) {
    std::vector<std::string> present;
    std::vector<std::vector<std::vector<std::size_t>>> groups;
    for (const std::string& policy : policies) {
      auto it = grid[problem].find(policy);
      if (it == grid[problem].end()) continue;
      present.push_back(policy);
      std::vector<std::vector<std::size_t>> sequences;
      for (const RunRecord& record : it->second->records) {
        sequences.push_back(record.action_sequence);
      }
      groups.push_back(std::move(sequences));
    }
    SimilarityMatrices matrices = similarity_matrix(groups, scoring);
    similarity[problem] = {
        {"policies", present},
        {"raw", matrices.raw},
        {"normalized", matrices.normalized},
    };
  }

  nlohmann::json best_single = nlohmann::json::object();
  for (const std::string& problem : problems) {
    const std::string* best = nullptr;
    double best_mean = 0.0;
    for (const std::string& policy : policies) {
      if (policy.rfind("single:", 0) != 0) continue;
      auto it = means[problem].find(policy);
      if (it == means[problem].end()) continue;
      if (!best || it->second < best_mean) {
        best = &policy;
        best_mean = it->second;
      }
    }
    if (best) best_single[problem] = {{"policy", *best}, {"mean_error", best_mean}};
  }

  return nlohmann::json{
      {"problems", problems},
      {"policies", policies},
      {"summary", std::move(summary)},
      {"t_tests", std::move(t_tests)},
      {"friedman", std::move(friedman)},
      {"similarity", std::move(similarity)},
      {"best_single", std::move(best_single)},
      {"alpha", alpha},
      {"scoring", {{"match", scoring.match},
                   {"mismatch", scoring.mismatch},
                   {"gap", scoring.gap}}},
  };
}

ExperimentResult load_experiment(const std::filesystem::path& dir, double alpha,
                                 const AlignmentScoring& scoring) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }

  std::map<std::pair<std::string, std::string>, CellResult> cells;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.rfind("run_", 0) != 0 || entry.path().extension() != ".json") continue;

    RunRecord record = load_run_record(entry.path());
    const nlohmann::json& config = record.config;
    ProblemSpec problem{function_from_name(config.at("problem").get<std::string>()),
                        config.at("dimension").get<std::size_t>()};
    PolicySpec policy = parse_policy(config.at("policy").get<std::string>());

    CellResult& cell = cells[{problem_label(problem), policy.label}];
    cell.problem = problem;
    cell.policy = policy;
    cell.records.push_back(std::move(record));
  }
  if (cells.empty()) throw std::runtime_error("no run records under " + dir.string());

  ExperimentResult result;
  for (auto& [key, cell] : cells) {
    std::sort(cell.records.begin(), cell.records.end(),
              [](const RunRecord& a, const RunRecord& b) {
                return a.config.value("run_index", std::size_t{0}) <
                       b.config.value("run_index", std::size_t{0});
              });
    result.cells.push_back(std::move(cell));
  }
  result.report = build_report(result.cells, alpha, scoring);
  return result;
}

void write_report_files(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    if (!out) throw std::runtime_error("cannot write report.json under " + dir.string());
    out << result.report.dump(2) << '\n';
  }

  {
    std::ofstream out(dir / "summary.csv");
    out << "problem,policy,runs,mean_error,std_error,mean_consumed,mean_sequence_length\n";
    for (const auto& row : result.report.at("summary")) {
      out << row.at("problem").get<std::string>() << ','
          << row.at("policy").get<std::string>() << ',' << row.at("runs").get<std::size_t>()
          << ',' << shortest_repr(row.at("mean_error").get<double>()) << ','
          << shortest_repr(row.at("std_error").get<double>()) << ','
          << shortest_repr(row.at("mean_consumed").get<double>()) << ','
          << shortest_repr(row.at("mean_sequence_length").get<double>()) << '\n';
    }
  }

  {
    std::ofstream out(dir / "ttests.csv");
    out << "a,b,problem,verdict,t,p\n";
    for (const auto& pair : result.report.at("t_tests")) {
      for (const auto& [problem, test] : pair.at("per_problem").items()) {
        const nlohmann::json& t = test.at("t");
        out << pair.at("a").get<std::string>() << ',' << pair.at("b").get<std::string>() << ','
            << problem << ',' << test.at("verdict").get<std::string>() << ','
            << (t.is_number() ? shortest_repr(t.get<double>()) : t.get<std::string>()) << ','
            << shortest_repr(test.at("p").get<double>()) << '\n';
      }
    }
  }

  if (!result.report.at("friedman").is_null()) {
    const nlohmann::json& friedman = result.report.at("friedman");
    std::ofstream out(dir / "friedman.csv");
    out << "policy,mean_rank,statistic,p_value\n";
    for (const auto& [policy, rank] : friedman.at("mean_ranks").items()) {
      out << policy << ',' << shortest_repr(rank.get<double>()) << ','
          << shortest_repr(friedman.at("statistic").get<double>()) << ','
          << shortest_repr(friedman.at("p_value").get<double>()) << '\n';
    }
  }

  for (const auto& [problem, entry] : result.report.at("similarity").items()) {
    for (const char* kind : {"raw", "normalized"}) {
      std::ofstream out(dir / ("similarity_" + std::string(kind) + "_" + problem + ".csv"));
      out << "policy";
      for (const auto& policy : entry.at("policies")) out << ',' << policy.get<std::string>();
      out << '\n';
      const nlohmann::json& matrix = entry.at(kind);
      for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << entry.at("policies")[i].get<std::string>();
        for (const auto& value : matrix[i]) out << ',' << shortest_repr(value.get<double>());
        out << '\n';
      }
    }
  }

  for (const CellResult& cell : result.cells) {
    std::filesystem::path cell_dir =
        dir / problem_label(cell.problem) / policy_dir_name(cell.policy.label);
    std::filesystem::create_directories(cell_dir);
    for (std::size_t r = 0; r < cell.records.size(); ++r) {
      std::size_t run_index = cell.records[r].config.value("run_index", r);
      save_curve_csv(cell.records[r],
                     cell_dir / ("run_" + std::to_string(run_index) + "_curve.csv"));
    }
  }
}

}  // namespace ter
