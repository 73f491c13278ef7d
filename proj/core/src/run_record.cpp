#include "ter/run_record.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ter {
namespace {

std::string shortest_repr(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

}  // namespace

nlohmann::json to_json(const RunRecord& record) {
  nlohmann::json curve = nlohmann::json::array();
  for (const CurvePoint& p : record.curve) {
    curve.push_back({p.consumed, p.y});
  }
  return nlohmann::json{
      {"action_sequence", record.action_sequence},
      {"curve", std::move(curve)},
      {"overall_improvement", record.overall_improvement},
      {"overall_efficiency", record.overall_efficiency},
      {"consumed", record.consumed},
      {"seed", record.seed},
      {"config", record.config},
  };
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord record;
  record.action_sequence = j.at("action_sequence").get<std::vector<std::size_t>>();
  for (const auto& p : j.at("curve")) {
    record.curve.push_back(CurvePoint{p.at(0).get<double>(), p.at(1).get<double>()});
  }
  record.overall_improvement = j.at("overall_improvement").get<double>();
  record.overall_efficiency = j.at("overall_efficiency").get<double>();
  record.consumed = j.at("consumed").get<double>();
  record.seed = j.at("seed").get<std::uint64_t>();
  record.config = j.value("config", nlohmann::json());
  return record;
}

void save_run_record(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(record).dump(2) << '\n';
}

RunRecord load_run_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  in >> j;
  return run_record_from_json(j);
}

void write_curve_csv(const RunRecord& record, std::ostream& out) {
  out << "consumed,y\n";
  for (const CurvePoint& p : record.curve) {
    out << shortest_repr(p.consumed) << ',' << shortest_repr(p.y) << '\n';
  }
}

void save_curve_csv(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_curve_csv(record, out);
}

}  // namespace ter
