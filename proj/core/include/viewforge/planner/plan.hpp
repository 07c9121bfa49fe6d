#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewforge/planner/search.hpp"

namespace viewforge {

// Everything the planner reads: the scene mesh, the region of interest (face
// ids of `mesh`), the captured cameras and their confidence images (matched
// to cameras by image id; cameras without one fall back to the 0.5 prior).
struct PlanSnapshot {
    TriangleMesh mesh;
    std::vector<int> roi;
    std::vector<Camera> cameras;
    std::vector<ConfidenceImage> confidences;
};

struct PlanResult {
    std::vector<CameraTriplet> triplets;  // planned in order, gains recorded
    TriangleMesh working_mesh;            // roi-subdivided mesh the scores used
    std::vector<int> working_roi;
    double total_seconds = 0.0;
    std::vector<std::string> warnings;
};

// Plans up to triplets_per_call camera triplets: per iteration scores the roi
// against the captured set (plus previously planned triplets), keeps the
// lowest-fulfillment targets, samples free-space camera positions, orients
// them toward their gain clusters and takes the best candidate triplet; stops
// early when no candidate adds gain. Deterministic for a fixed seed.
PlanResult plan_views(const PlanSnapshot& snapshot, const PlannerConfig& cfg,
                      std::uint64_t seed);

// Faces of `mesh` whose rendered pixels fall inside a polygon drawn on
// `camera`'s image (vertices in full-resolution pixel coordinates).
std::vector<int> roi_from_polygon(const TriangleMesh& mesh, const Camera& camera,
                                  const std::vector<Vec2>& polygon_px, int downscale = 1);

} // namespace viewforge
