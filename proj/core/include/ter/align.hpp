#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ter {

// Local-alignment scoring. match rewards equal symbols, mismatch and gap are
// penalties (non-positive).
struct AlignmentScoring {
  double match = 2.0;
  double mismatch = -1.0;
  double gap = -1.0;
};

// Best local-alignment score between two action sequences:
// H(i,j) = max(0, H(i-1,j-1) + s(a_i, b_j), H(i-1,j) + gap, H(i,j-1) + gap),
// returning the maximum cell. Empty sequences score 0.
double smith_waterman(std::span<const std::size_t> a, std::span<const std::size_t> b,
                      const AlignmentScoring& scoring = {});

struct SimilarityMatrices {
  // Entry (g, h) is the mean pairwise score between groups g and h; diagonal
  // entries average over distinct in-group pairs (self-alignment for a
  // single-sequence group).
  std::vector<std::vector<double>> raw;
  // Raw scores divided per pair by match * min(length), the maximum possible.
  std::vector<std::vector<double>> normalized;
};

SimilarityMatrices similarity_matrix(
    const std::vector<std::vector<std::vector<std::size_t>>>& groups,
    const AlignmentScoring& scoring = {});

}  // namespace ter
