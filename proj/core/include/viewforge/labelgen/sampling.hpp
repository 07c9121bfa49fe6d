#pragma once

#include <array>
#include <string>
#include <vector>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/mesh.hpp"
#include "viewforge/util/rng.hpp"

namespace viewforge {

// A camera triplet drawn from one triangulation-angle bin.
struct TripletSample {
    std::array<std::string, 3> camera_ids;
    int angle_bin = 0;
    double representative_angle_deg = 0.0;
};

struct TripletSamplingConfig {
    int bins = 5;                    // number of angle bins
    int per_bin = 4;                 // target triplets per bin
    double min_overlap = 0.3;        // pairwise image_overlap floor
    double alpha0_deg = 4.0;         // lower edge of the first bin
    int max_attempts_per_bin = 400;  // rejection-sampling budget
    int max_candidate_faces = 400;   // mesh faces probed for common visibility
    int min_common_faces = 8;        // required faces seen by all three
};

// Bin i covers [alpha0 * 2^i, alpha0 * 2^(i+1)).
double angle_bin_lo(const TripletSamplingConfig& cfg, int bin);
double angle_bin_hi(const TripletSamplingConfig& cfg, int bin);

// Rejection-samples camera triplets per angle bin. A candidate is accepted
// when all ordered camera pairs clear min_overlap, enough mesh faces are
// visible in all three views, and the median pairwise triangulation angle
// over those faces lands in the bin. Bins that cannot be filled within the
// attempt budget yield fewer samples and a warning line.
std::vector<TripletSample> sample_triplets(const std::vector<Camera>& cameras,
                                           const TriangleMesh& mesh,
                                           const TripletSamplingConfig& cfg, Rng& rng,
                                           std::vector<std::string>* warnings = nullptr);

} // namespace viewforge
