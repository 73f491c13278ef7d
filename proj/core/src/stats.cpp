#include "ter/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace ter {

std::string_view ttest_verdict_symbol(TtestVerdict verdict) {
  switch (verdict) {
    case TtestVerdict::FirstSmaller: return "<";
    case TtestVerdict::Indistinct: return "~";
    case TtestVerdict::FirstGreater: return ">";
  }
  throw std::invalid_argument("unknown t-test verdict");
}

TtestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  if (a.size() < 2) throw std::invalid_argument("paired t-test needs at least 2 pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

  std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);

  double variance = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double centered = (a[i] - b[i]) - mean;
    variance += centered * centered;
  }
  variance /= static_cast<double>(n - 1);

  TtestResult result;
  if (variance == 0.0) {
    if (mean == 0.0) {
      result.verdict = TtestVerdict::Indistinct;
      result.t = 0.0;
      result.p = 1.0;
      return result;
    }
    // Zero spread around a nonzero mean: the t statistic diverges.
    result.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
    result.p = 0.0;
    result.verdict = mean < 0.0 ? TtestVerdict::FirstSmaller : TtestVerdict::FirstGreater;
    return result;
  }

  result.t = mean / std::sqrt(variance / static_cast<double>(n));
  boost::math::students_t distribution(static_cast<double>(n - 1));
  result.p = 2.0 * boost::math::cdf(boost::math::complement(distribution, std::abs(result.t)));
  if (result.p < alpha) {
    result.verdict = mean < 0.0 ? TtestVerdict::FirstSmaller : TtestVerdict::FirstGreater;
  } else {
    result.verdict = TtestVerdict::Indistinct;
  }
  return result;
}

FriedmanResult friedman_test(const std::vector<std::vector<double>>& results) {
  std::size_t k = results.size();
  if (k < 2) throw std::invalid_argument("friedman test needs at least 2 algorithms");
  std::size_t n = results[0].size();
  if (n < 2) throw std::invalid_argument("friedman test needs at least 2 problems");
  for (const auto& row : results) {
    if (row.size() != n) throw std::invalid_argument("friedman matrix rows differ in length");
  }

  std::vector<double> rank_sums(k, 0.0);
  std::vector<std::size_t> order(k);
  for (std::size_t problem = 0; problem < n; ++problem) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return results[a][problem] < results[b][problem];
    });
    // Tied values share the mean of the rank positions they occupy.
    std::size_t i = 0;
    while (i < k) {
      std::size_t j = i;
      while (j + 1 < k && results[order[j + 1]][problem] == results[order[i]][problem]) ++j;
      double shared = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t m = i; m <= j; ++m) rank_sums[order[m]] += shared;
      i = j + 1;
    }
  }

  FriedmanResult result;
  result.mean_ranks.resize(k);
  double square_sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    result.mean_ranks[j] = rank_sums[j] / static_cast<double>(n);
    square_sum += result.mean_ranks[j] * result.mean_ranks[j];
  }

  double kd = static_cast<double>(k);
  double nd = static_cast<double>(n);
  result.statistic = 12.0 * nd / (kd * (kd + 1.0)) * (square_sum - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
  // Tie-heavy columns can push the uncorrected statistic a hair below zero.
  result.statistic = std::max(0.0, result.statistic);

  boost::math::chi_squared distribution(kd - 1.0);
  result.p = boost::math::cdf(boost::math::complement(distribution, result.statistic));
  return result;
}

}  // namespace ter
