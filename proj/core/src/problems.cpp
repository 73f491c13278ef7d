#include "ter/problems.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ter {
namespace {

struct FunctionInfo {
  std::string_view name;
  double half_width;
};

const FunctionInfo& function_info(FunctionId id) {
  static const FunctionInfo kInfo[] = {
      {"sphere", 100.0},   {"schwefel221", 100.0}, {"rosenbrock", 100.0},
      {"rastrigin", 5.0},  {"griewank", 600.0},    {"ackley", 32.0},
  };
  auto index = static_cast<std::size_t>(id);
  if (index >= std::size(kInfo)) throw std::invalid_argument("unknown function id");
  return kInfo[index];
}

}  // namespace

std::string_view function_name(FunctionId id) { return function_info(id).name; }

FunctionId function_from_name(std::string_view name) {
  for (FunctionId id : kAllFunctions) {
    if (function_info(id).name == name) return id;
  }
  throw std::invalid_argument("unknown function: " + std::string(name));
}

Box default_bounds(FunctionId id, std::size_t dimension) {
  double half = function_info(id).half_width;
  return Box::cube(dimension, -half, half);
}

BenchmarkProblem::BenchmarkProblem(FunctionId id, std::vector<double> shift)
    : id_(id), shift_(std::move(shift)) {
  if (shift_.empty()) throw std::invalid_argument("benchmark dimension must be at least 1");
  box_ = default_bounds(id, shift_.size());
  if (!box_.contains(shift_)) {
    throw std::invalid_argument("shift vector lies outside the function's bounds");
  }
  scratch_.resize(shift_.size());
  if (id == FunctionId::Griewank) {
    inv_sqrt_.resize(shift_.size());
    for (std::size_t i = 0; i < inv_sqrt_.size(); ++i) {
      inv_sqrt_[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    }
  }
}

double BenchmarkProblem::evaluate(std::span<const double> x) {
  std::size_t dimension = shift_.size();
  if (x.size() != dimension) throw std::invalid_argument("benchmark: dimension mismatch");
  ++evaluation_count_;

  std::vector<double>& z = scratch_;
  double offset = id_ == FunctionId::Rosenbrock ? 1.0 : 0.0;
  for (std::size_t i = 0; i < dimension; ++i) {
    z[i] = x[i] - shift_[i] + offset;
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (id_) {
    case FunctionId::Sphere: {
      double sum = 0.0;
      for (double v : z) sum += v * v;
      return sum;
    }
    case FunctionId::Schwefel221: {
      double worst = 0.0;
      for (double v : z) worst = std::max(worst, std::abs(v));
      return worst;
    }
    case FunctionId::Rosenbrock: {
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < dimension; ++i) {
        double a = z[i] * z[i] - z[i + 1];
        double b = z[i] - 1.0;
        sum += 100.0 * a * a + b * b;
      }
      return sum;
    }
    case FunctionId::Rastrigin: {
      double sum = 0.0;
      for (double v : z) sum += v * v - 10.0 * std::cos(two_pi * v) + 10.0;
      return sum;
    }
    case FunctionId::Griewank: {
      double sum = 0.0;
      double product = 1.0;
      for (std::size_t i = 0; i < dimension; ++i) {
        sum += z[i] * z[i];
        product *= std::cos(z[i] * inv_sqrt_[i]);
      }
      return sum / 4000.0 - product + 1.0;
    }
    case FunctionId::Ackley: {
      double square_sum = 0.0;
      double cos_sum = 0.0;
      for (double v : z) {
        square_sum += v * v;
        cos_sum += std::cos(two_pi * v);
      }
      double d = static_cast<double>(dimension);
      // Grouped so both parts vanish exactly at z = 0.
      return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(square_sum / d))) +
             (std::exp(1.0) - std::exp(cos_sum / d));
    }
  }
  throw std::invalid_argument("unknown function id");
}

std::vector<double> shift_from_seed(FunctionId id, std::size_t dimension, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("benchmark dimension must be at least 1");
  Box box = default_bounds(id, dimension);
  Rng rng(seed);
  std::vector<double> shift(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    double mid = 0.5 * (box.lower[i] + box.upper[i]);
    double quarter = 0.25 * box.range(i);
    shift[i] = uniform_real(rng, mid - quarter, mid + quarter);
  }
  return shift;
}

std::vector<double> shift_from_file(FunctionId id, std::size_t dimension,
                                    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read shift file " + path.string());

  std::vector<double> shift;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream parser(line);
    double value = 0.0;
    char extra = 0;
    if (!(parser >> value) || (parser >> extra)) {
      throw std::runtime_error("shift file " + path.string() + ": bad line '" + line + "'");
    }
    shift.push_back(value);
  }
  if (shift.size() != dimension) {
    throw std::runtime_error("shift file " + path.string() + ": expected " +
                             std::to_string(dimension) + " values, found " +
                             std::to_string(shift.size()));
  }
  if (!default_bounds(id, dimension).contains(shift)) {
    throw std::runtime_error("shift file " + path.string() + ": values outside bounds");
  }
  return shift;
}

void save_shift_file(const std::vector<double>& shift, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write shift file " + path.string());
  for (double v : shift) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("shift value formatting failed");
    out << std::string_view(buf, end - buf) << '\n';
  }
}

BenchmarkProblem make_problem(FunctionId id, std::size_t dimension, std::uint64_t shift_seed) {
  return BenchmarkProblem(id, shift_from_seed(id, dimension, shift_seed));
}

BenchmarkProblem make_problem(FunctionId id, std::size_t dimension,
                              const std::filesystem::path& shift_file) {
  return BenchmarkProblem(id, shift_from_file(id, dimension, shift_file));
}

}  // namespace ter
