#pragma once

#include <cstdint>

#include <json.hpp>

namespace viewforge {

// Knobs of the fixed-time view planner. The quality targets (min_cameras,
// desired_resolution, desired_accuracy, alpha) define the fulfillment
// function; the sampling counts bound the per-iteration work and therefore
// the planning time.
struct PlannerConfig {
    int min_cameras = 3;                  // cameras required for coverage
    double desired_resolution = 15625.0;  // px/m^2 (default ~ one pixel per 8 mm)
    double desired_accuracy = 0.008;      // m
    double alpha = 0.5;                   // resolution-vs-uncertainty weight in [0,1]

    int n_triangles = 2000;  // triangles scored per iteration
    int n_positions = 5000;  // candidate camera positions sampled per iteration
    int n_targets = 200;     // low-fulfillment triangles kept as planning targets

    double virtual_fov_deg = 120.0;  // field of view of the per-triangle virtual cameras
    int bins = 9;                    // angular confidence bins
    double gamma_max_deg = 45.0;     // upper edge of the binned angle range
    int triplets_per_call = 4;       // k: triplets planned per invocation
    double min_overlap = 0.5;        // registration overlap threshold in (0,1)
    double safety_distance = 5.0;    // m, obstacle clearance for planned cameras
    double voxel_resolution = 2.0;   // m, distance-field voxel edge
    double pixel_noise_std = 1.0;    // px, noise model for triangulation uncertainty

    // Implementation knobs (not part of the quality model).
    int render_downscale = 1;        // downscale for visibility renders
    int virtual_render_size = 96;    // depth-buffer edge of virtual cameras, px
    double bounds_padding = 0.35;    // free-space box padding, fraction of mesh diagonal
    int max_view_cameras = 20;       // cap on cameras enumerated per triangle
    int sample_retry_factor = 20;    // position sampling attempts per requested sample
};

// Throws ConfigError when any field is out of range.
void validate_config(const PlannerConfig& cfg);

nlohmann::json planner_config_to_json(const PlannerConfig& cfg);
PlannerConfig planner_config_from_json(const nlohmann::json& j);

} // namespace viewforge
