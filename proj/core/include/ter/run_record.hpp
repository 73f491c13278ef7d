#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

namespace ter {

// One sample of the best-fitness curve: resources consumed so far and the
// incumbent value at that point.
struct CurvePoint {
  double consumed = 0.0;
  double y = 0.0;
};

// Complete trace of a single optimization run. overall_improvement telescopes
// the per-initiation improvements (y0 - y_final) and overall_efficiency is
// overall_improvement / consumed at termination.
struct RunRecord {
  std::vector<std::size_t> action_sequence;
  std::vector<CurvePoint> curve;
  double overall_improvement = 0.0;
  double overall_efficiency = 0.0;
  double consumed = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json config;

  double final_y() const { return curve.empty() ? 0.0 : curve.back().y; }
};

nlohmann::json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);

void save_run_record(const RunRecord& record, const std::filesystem::path& path);
RunRecord load_run_record(const std::filesystem::path& path);

// Curve as CSV with a `consumed,y` header, one sample per line.
void write_curve_csv(const RunRecord& record, std::ostream& out);
void save_curve_csv(const RunRecord& record, const std::filesystem::path& path);

}  // namespace ter
