#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "ter/objective.hpp"

namespace ter {

enum class FunctionId { Sphere, Schwefel221, Rosenbrock, Rastrigin, Griewank, Ackley };

inline constexpr FunctionId kAllFunctions[] = {
    FunctionId::Sphere,    FunctionId::Schwefel221, FunctionId::Rosenbrock,
    FunctionId::Rastrigin, FunctionId::Griewank,    FunctionId::Ackley,
};

std::string_view function_name(FunctionId id);
FunctionId function_from_name(std::string_view name);

// Per-function box: sphere/schwefel221/rosenbrock [-100,100], rastrigin
// [-5,5], griewank [-600,600], ackley [-32,32] on every dimension.
Box default_bounds(FunctionId id, std::size_t dimension);

// Shifted scalable benchmark functions. Every function's global minimum value
// is exactly 0, reached at x = shift (rosenbrock included, via z = x - o + 1),
// so y_best doubles as the error. Each evaluate call bumps the counter by 1.
class BenchmarkProblem : public Objective {
 public:
  BenchmarkProblem(FunctionId id, std::vector<double> shift);

  double evaluate(std::span<const double> x) override;
  const Box& bounds() const override { return box_; }

  FunctionId id() const { return id_; }
  const std::vector<double>& shift() const { return shift_; }
  std::uint64_t evaluation_count() const { return evaluation_count_; }

 private:
  FunctionId id_;
  std::vector<double> shift_;
  Box box_;
  std::vector<double> scratch_;
  std::vector<double> inv_sqrt_;
  std::uint64_t evaluation_count_ = 0;
};

// Shift drawn uniformly inside the central half of the function's box.
std::vector<double> shift_from_seed(FunctionId id, std::size_t dimension, std::uint64_t seed);

// Plain text, one decimal value per line, exactly `dimension` lines. A short,
// unparsable, or out-of-bounds file is a format error.
std::vector<double> shift_from_file(FunctionId id, std::size_t dimension,
                                    const std::filesystem::path& path);
void save_shift_file(const std::vector<double>& shift, const std::filesystem::path& path);

BenchmarkProblem make_problem(FunctionId id, std::size_t dimension, std::uint64_t shift_seed);
BenchmarkProblem make_problem(FunctionId id, std::size_t dimension,
                              const std::filesystem::path& shift_file);

}  // namespace ter
