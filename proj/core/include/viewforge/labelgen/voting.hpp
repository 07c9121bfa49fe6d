#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewforge/labelgen/support.hpp"

namespace viewforge {

struct VotingConfig {
    double positive_sigma = 1.0;  // agreement interval along the query ray
    double blocking_sigma = 3.0;  // line-of-sight violation threshold
};

struct VoteTally {
    int width = 0;
    int height = 0;
    std::vector<float> positive;
    std::vector<float> negative;
};

// Supported reference measurements vote on one query image. A measurement
// landing within positive_sigma of the query depth casts a positive vote;
// one that cuts the query ray short by more than blocking_sigma, or whose
// own ray is cut short by the query point, casts a negative vote. Votes
// weigh support / sigma_ref, and each reference triplet votes at most once
// per pixel (first measurement wins, positives checked first).
VoteTally cast_votes(const TripletRecord& query, int image_index,
                     const std::vector<const TripletRecord*>& references,
                     const VotingConfig& cfg);

struct LabelImage {
    static constexpr std::uint8_t kUnlabeled = 0;
    static constexpr std::uint8_t kNegative = 1;
    static constexpr std::uint8_t kPositive = 2;

    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;
    std::vector<float> angle_deg;  // producing triplet's angle; +inf if unlabeled

    double density() const {
        if (labels.empty()) return 0.0;
        std::size_t n = 0;
        for (auto l : labels) n += l != kUnlabeled;
        return static_cast<double>(n) / labels.size();
    }
};

// Majority label per pixel: positive iff positive weight > negative weight,
// negative iff the reverse; ties and unvoted pixels stay unlabeled.
LabelImage label_from_votes(const VoteTally& tally, const std::string& image_id,
                            double representative_angle_deg);

} // namespace viewforge
