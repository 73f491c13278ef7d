#include "ter/align.hpp"

#include <algorithm>
#include <stdexcept>

namespace ter {
namespace {

void validate(const AlignmentScoring& scoring) {
  if (!(scoring.match > 0.0)) throw std::invalid_argument("match score must be positive");
  if (scoring.mismatch > 0.0) throw std::invalid_argument("mismatch score must be non-positive");
  if (scoring.gap > 0.0) throw std::invalid_argument("gap score must be non-positive");
}

double pair_score(std::span<const std::size_t> a, std::span<const std::size_t> b,
                  const AlignmentScoring& scoring, bool normalized) {
  double score = smith_waterman(a, b, scoring);
  if (!normalized) return score;
  std::size_t shorter = std::min(a.size(), b.size());
  if (shorter == 0) return 0.0;
  return score / (scoring.match * static_cast<double>(shorter));
}

double group_mean(const std::vector<std::vector<std::size_t>>& g,
                  const std::vector<std::vector<std::size_t>>& h, bool same,
                  const AlignmentScoring& scoring, bool normalized) {
  if (same && g.size() == 1) return pair_score(g[0], g[0], scoring, normalized);

  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = same ? i + 1 : 0; j < h.size(); ++j) {
      total += pair_score(g[i], h[j], scoring, normalized);
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : total / static_cast<double>(pairs);
}

}  // namespace

double smith_waterman(std::span<const std::size_t> a, std::span<const std::size_t> b,
                      const AlignmentScoring& scoring) {
  validate(scoring);
  if (a.empty() || b.empty()) return 0.0;

  // One rolling row of H; prev_diag carries H(i-1, j-1) across the inner loop.
  std::vector<double> row(b.size() + 1, 0.0);
  double best = 0.0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    double prev_diag = 0.0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      double substitution = a[i - 1] == b[j - 1] ? scoring.match : scoring.mismatch;
      double h = std::max({0.0, prev_diag + substitution, row[j] + scoring.gap,
                           row[j - 1] + scoring.gap});
      prev_diag = row[j];
      row[j] = h;
      best = std::max(best, h);
    }
  }
  return best;
}

SimilarityMatrices similarity_matrix(
    const std::vector<std::vector<std::vector<std::size_t>>>& groups,
    const AlignmentScoring& scoring) {
  validate(scoring);
  for (const auto& group : groups) {
    if (group.empty()) throw std::invalid_argument("similarity groups need at least one sequence");
  }

  std::size_t n = groups.size();
  SimilarityMatrices result;
  result.raw.assign(n, std::vector<double>(n, 0.0));
  result.normalized.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = g; h < n; ++h) {
      double raw = group_mean(groups[g], groups[h], g == h, scoring, false);
      double norm = group_mean(groups[g], groups[h], g == h, scoring, true);
      result.raw[g][h] = result.raw[h][g] = raw;
      result.normalized[g][h] = result.normalized[h][g] = norm;
    }
  }
  return result;
}

}  // namespace ter
