#pragma once

#include <vector>

namespace viewforge {

struct SparsificationResult {
    double ausc = 0.0;          // area under the sparsification curve
    double optimal_ausc = 0.0;  // errors removed first
    double random_ausc = 0.0;   // overall error rate (constant curve)
    double relative_ausc = 0.0; // ausc / optimal; NaN when optimal degenerates
    std::vector<double> curve;  // error rate after removing k = 0..N-1 pixels
};

// Sparsification: pixels leave in ascending confidence order; after each
// removal the error rate of the retained (highest-confidence) set is
// recorded, for retained fractions 1, (N-1)/N, ..., 1/N. AUSC is the mean of
// that curve. Confidence ties break by index, so the result is deterministic.
// All-correct and all-wrong inputs make the optimal area degenerate; the
// relative score is then NaN.
SparsificationResult sparsification_ausc(const std::vector<double>& confidence,
                                         const std::vector<bool>& error);

} // namespace viewforge
