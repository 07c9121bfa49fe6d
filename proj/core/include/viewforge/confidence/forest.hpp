#pragma once

#include <cstdint>
#include <vector>

#include "viewforge/confidence/samples.hpp"

namespace viewforge {

// Binary split evaluated directly on Lab pixel values around the patch
// center: one or two taps at fixed offsets, combined and thresholded.
struct SplitTest {
    enum class Kind : std::uint8_t {
        kValue = 0,         // tap1
        kSum = 1,           // tap1 + tap2
        kDifference = 2,    // tap1 - tap2
        kAbsDifference = 3  // |tap1 - tap2|
    };

    Kind kind = Kind::kValue;
    std::int8_t dx1 = 0, dy1 = 0;
    std::int8_t dx2 = 0, dy2 = 0;
    std::uint8_t ch1 = 0, ch2 = 0;  // 0 = L, 1 = a, 2 = b
    float threshold = 0.0f;

    double response(const ImageLab& im, int x, int y) const {
        double t1 = im.at(x + dx1, y + dy1, ch1);
        switch (kind) {
            case Kind::kValue: return t1;
            case Kind::kSum: return t1 + im.at(x + dx2, y + dy2, ch2);
            case Kind::kDifference: return t1 - im.at(x + dx2, y + dy2, ch2);
            case Kind::kAbsDifference:
            default: return std::abs(t1 - im.at(x + dx2, y + dy2, ch2));
        }
    }

    // samples route left when response < threshold
    bool goes_left(const ImageLab& im, int x, int y) const { return response(im, x, y) < threshold; }
};

struct BinStats {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    float confidence = 0.5f;  // smoothed positive fraction
};

struct TreeLeaf {
    std::uint32_t n_pos = 0;  // in-bag class counts from training
    std::uint32_t n_neg = 0;
    std::vector<BinStats> bins;  // filled by restructure_leaves

    double positive_rate() const {
        return (n_pos + 1.0) / (n_pos + n_neg + 2.0);
    }
};

// Interior node when leaf < 0, otherwise an index into Tree::leaves.
struct TreeNode {
    SplitTest test;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t leaf = -1;
};

struct Tree {
    std::vector<TreeNode> nodes;  // node 0 is the root
    std::vector<TreeLeaf> leaves;

    const TreeLeaf& leaf_for(const ImageLab& im, int x, int y) const;
};

struct ForestConfig {
    int trees = 20;
    int max_depth = 20;
    int min_leaf = 50;      // nodes below this size are not split further
    int node_tests = 5000;  // candidate split tests drawn per node
    int thresholds = 100;   // quantile thresholds evaluated per test
    int node_samples = 1000;  // samples scoring the candidates at each node
    std::uint64_t seed = 1;
};

struct ConfidenceForest {
    ForestConfig config;
    int bins = 0;            // 0 until restructure_leaves ran
    double gamma_max = 0.0;  // upper edge of the binned angle range, degrees
    std::vector<Tree> trees;
};

struct TrainReport {
    double oob_accuracy = -1.0;  // -1 when no sample was ever out of bag
    int oob_samples = 0;
};

// Grows config.trees bagged trees. Each node draws node_tests random split
// tests and scores node_samples random node members against thresholds
// quantile thresholds by Shannon information gain; splitting stops at
// max_depth, below min_leaf, on purity, or when no candidate gains. The
// report carries out-of-bag majority-vote accuracy.
ConfidenceForest train_forest(const SampleSet& data, const ForestConfig& cfg,
                              TrainReport* report = nullptr);

// Routes every sample to its leaf in every tree and accumulates per-angular-
// bin class counts; bin i covers [i*gamma_max/b, (i+1)*gamma_max/b) degrees
// and the last bin additionally absorbs everything >= gamma_max. Per-bin
// confidence is the Laplace-smoothed positive fraction (pos+1)/(pos+neg+2).
ConfidenceForest restructure_leaves(const ConfidenceForest& forest, const SampleSet& data,
                                    int b, double gamma_max_deg);

// Angular bin of an angle under the restructuring scheme above.
int angle_bin_index(double angle_deg, int bins, double gamma_max_deg);

} // namespace viewforge
