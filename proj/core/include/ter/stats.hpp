#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace ter {

enum class TtestVerdict { FirstSmaller, Indistinct, FirstGreater };

// "<", "~", or ">" from the first sample's perspective.
std::string_view ttest_verdict_symbol(TtestVerdict verdict);

struct TtestResult {
  TtestVerdict verdict = TtestVerdict::Indistinct;
  double t = 0.0;
  double p = 1.0;
};

// Two-sided paired t-test on d = a - b with n - 1 degrees of freedom.
// All-zero differences are Indistinct with t = 0; zero-variance nonzero-mean
// differences are decided by the sign of the mean with t = +-infinity.
TtestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          double alpha = 0.05);

struct FriedmanResult {
  double statistic = 0.0;
  double p = 1.0;
  std::vector<double> mean_ranks;
};

// Friedman rank test over a k x N matrix (rows: algorithms, columns:
// problems). Ranks within each problem, averaging ties, then
// chi^2 = 12N / (k(k+1)) * (sum R_j^2 - k(k+1)^2 / 4) on the mean ranks R_j,
// with k - 1 degrees of freedom.
FriedmanResult friedman_test(const std::vector<std::vector<double>>& results);

}  // namespace ter
