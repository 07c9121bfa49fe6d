#pragma once

// Shared fixtures for the planner tests: a configuration scaled to the
// couple-of-meters test scenes and constant-value confidence images.

#include <numeric>
#include <string>
#include <vector>

#include "support/builders.hpp"
#include "viewforge/confidence/predict.hpp"
#include "viewforge/planner/config.hpp"

namespace vftest {

using viewforge::ConfidenceImage;
using viewforge::PlannerConfig;

// Quality targets reachable by the 160x120 f=200 test cameras ~10 m from the
// scene (ground resolution ~(200/10)^2 = 400 px/m^2, depth sigma ~0.2 m).
inline PlannerConfig small_config() {
    PlannerConfig cfg;
    cfg.desired_resolution = 400.0;
    cfg.desired_accuracy = 0.25;
    cfg.n_triangles = 200;
    cfg.n_positions = 300;
    cfg.n_targets = 40;
    cfg.triplets_per_call = 2;
    cfg.safety_distance = 1.0;
    cfg.voxel_resolution = 1.0;
    cfg.virtual_render_size = 64;
    return cfg;
}

// Confidence image holding `value` in every bin at every node.
inline ConfidenceImage constant_confidence(const Camera& cam, double value, int bins = 9,
                                           double gamma_max = 45.0, int step = 8) {
    ConfidenceImage ci;
    ci.image_id = cam.id;
    ci.width = cam.intr.width;
    ci.height = cam.intr.height;
    ci.step = step;
    ci.bins = bins;
    ci.gamma_max = gamma_max;
    ci.grid_w = (ci.width + step - 1) / step;
    ci.grid_h = (ci.height + step - 1) / step;
    ci.data.assign(static_cast<std::size_t>(ci.grid_w) * ci.grid_h * bins,
                   static_cast<float>(value));
    return ci;
}

inline std::vector<int> all_faces(const TriangleMesh& mesh) {
    std::vector<int> roi(mesh.faces.size());
    std::iota(roi.begin(), roi.end(), 0);
    return roi;
}

} // namespace vftest
