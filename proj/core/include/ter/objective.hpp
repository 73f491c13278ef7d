#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ter/rng.hpp"

namespace ter {

// Axis-aligned box constraint. lower[i] < upper[i] for every dimension.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  double range(std::size_t i) const { return upper[i] - lower[i]; }

  double clamp(std::size_t i, double v) const {
    return std::clamp(v, lower[i], upper[i]);
  }

  // Mirrors an out-of-bounds value at the violated bound, then clamps so that
  // reflections overshooting the opposite bound still land inside.
  double reflect(std::size_t i, double v) const {
    if (v < lower[i]) v = lower[i] + (lower[i] - v);
    else if (v > upper[i]) v = upper[i] - (v - upper[i]);
    return clamp(i, v);
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != dimension()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
  }

  std::vector<double> sample_uniform(Rng& rng) const {
    std::vector<double> x(dimension());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = uniform_real(rng, lower[i], upper[i]);
    }
    return x;
  }

  static Box cube(std::size_t dimension, double lo, double hi) {
    return Box{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
  }
};

// Minimization objective over a box. evaluate is non-const so implementations
// may count calls or cache state; one call costs one evaluation.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual double evaluate(std::span<const double> x) = 0;
  virtual const Box& bounds() const = 0;
  std::size_t dimension() const { return bounds().dimension(); }
};

// Plug-in adapter for external objectives given as a plain callable.
class FunctionObjective : public Objective {
 public:
  FunctionObjective(std::function<double(std::span<const double>)> fn, Box box)
      : fn_(std::move(fn)), box_(std::move(box)) {}

  double evaluate(std::span<const double> x) override {
    if (x.size() != box_.dimension()) {
      throw std::invalid_argument("objective: dimension mismatch");
    }
    return fn_(x);
  }

  const Box& bounds() const override { return box_; }

 private:
  std::function<double(std::span<const double>)> fn_;
  Box box_;
};

}  // namespace ter
