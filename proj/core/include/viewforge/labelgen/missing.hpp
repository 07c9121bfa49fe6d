#pragma once

#include <cstdint>
#include <vector>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/depthmap.hpp"
#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

struct AugmentConfig {
    int window = 9;                    // median-fill window (odd)
    double min_valid_fraction = 0.25;  // required valid share in the window
    double spread_sigma_factor = 3.0;  // max depth spread, in sigma
    double fallback_sigma_rel = 0.03;  // sigma fallback: fraction of median depth
};

// Fills invalid pixels with the median of valid depths in a window around
// them, but only where the window is sufficiently populated and its depths
// agree within spread_sigma_factor * sigma (sigma = median per-pixel sigma
// when provided, otherwise fallback_sigma_rel * median depth). Leaves valid
// pixels untouched.
DepthMap augment_depthmap(const DepthMap& dm, const std::vector<float>* sigma,
                          const AugmentConfig& cfg = {});

// A pixel is missing iff the raw and the augmented depthmap are both invalid
// there while the shrunk and the expanded scene mesh both render finite
// depth, i.e. the reconstruction left a hole over certain geometry.
std::vector<std::uint8_t> detect_missing_prerendered(const DepthMap& dm,
                                                     const DepthMap& shrunk_depth,
                                                     const DepthMap& expanded_depth,
                                                     const std::vector<float>* sigma = nullptr,
                                                     const AugmentConfig& cfg = {});

std::vector<std::uint8_t> detect_missing(const DepthMap& dm, const Camera& camera,
                                         const TriangleMesh& shrunk,
                                         const TriangleMesh& expanded,
                                         const std::vector<float>* sigma = nullptr,
                                         const AugmentConfig& cfg = {});

} // namespace viewforge
