#include "viewforge/planner/config.hpp"

#include "viewforge/util/error.hpp"

namespace viewforge {

void validate_config(const PlannerConfig& cfg) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("planner config: ") + what);
    };
    require(cfg.min_cameras >= 2, "min_cameras must be >= 2");
    require(cfg.desired_resolution > 0.0, "desired_resolution must be positive");
    require(cfg.desired_accuracy > 0.0, "desired_accuracy must be positive");
    require(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "alpha must lie in [0, 1]");
    require(cfg.n_triangles > 0, "n_triangles must be positive");
    require(cfg.n_positions > 0, "n_positions must be positive");
    require(cfg.n_targets > 0, "n_targets must be positive");
    require(cfg.n_targets <= cfg.n_triangles, "n_targets must not exceed n_triangles");
    require(cfg.virtual_fov_deg > 0.0 && cfg.virtual_fov_deg < 180.0,
            "virtual_fov_deg must lie in (0, 180)");
    require(cfg.bins >= 1, "bins must be >= 1");
    require(cfg.gamma_max_deg > 0.0, "gamma_max_deg must be positive");
    require(cfg.triplets_per_call >= 1, "triplets_per_call must be >= 1");
    require(cfg.min_overlap > 0.0 && cfg.min_overlap < 1.0, "min_overlap must lie in (0, 1)");
    require(cfg.safety_distance > 0.0, "safety_distance must be positive");
    require(cfg.voxel_resolution > 0.0, "voxel_resolution must be positive");
    require(cfg.pixel_noise_std > 0.0, "pixel_noise_std must be positive");
    require(cfg.render_downscale >= 1, "render_downscale must be >= 1");
    require(cfg.virtual_render_size >= 8, "virtual_render_size must be >= 8");
    require(cfg.bounds_padding >= 0.0, "bounds_padding must be non-negative");
    require(cfg.max_view_cameras >= cfg.min_cameras, "max_view_cameras must be >= min_cameras");
    require(cfg.sample_retry_factor >= 1, "sample_retry_factor must be >= 1");
}

nlohmann::json planner_config_to_json(const PlannerConfig& cfg) {
    return nlohmann::json{{"min_cameras", cfg.min_cameras},
                          {"desired_resolution", cfg.desired_resolution},
                          {"desired_accuracy", cfg.desired_accuracy},
                          {"alpha", cfg.alpha},
                          {"n_triangles", cfg.n_triangles},
                          {"n_positions", cfg.n_positions},
                          {"n_targets", cfg.n_targets},
                          {"virtual_fov_deg", cfg.virtual_fov_deg},
                          {"bins", cfg.bins},
                          {"gamma_max_deg", cfg.gamma_max_deg},
                          {"triplets_per_call", cfg.triplets_per_call},
                          {"min_overlap", cfg.min_overlap},
                          {"safety_distance", cfg.safety_distance},
                          {"voxel_resolution", cfg.voxel_resolution},
                          {"pixel_noise_std", cfg.pixel_noise_std},
                          {"render_downscale", cfg.render_downscale},
                          {"virtual_render_size", cfg.virtual_render_size},
                          {"bounds_padding", cfg.bounds_padding},
                          {"max_view_cameras", cfg.max_view_cameras},
                          {"sample_retry_factor", cfg.sample_retry_factor}};
}

PlannerConfig planner_config_from_json(const nlohmann::json& j) {
    PlannerConfig cfg;
    auto load = [&j](auto& field, const char* key) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    load(cfg.min_cameras, "min_cameras");
    load(cfg.desired_resolution, "desired_resolution");
    load(cfg.desired_accuracy, "desired_accuracy");
    load(cfg.alpha, "alpha");
    load(cfg.n_triangles, "n_triangles");
    load(cfg.n_positions, "n_positions");
    load(cfg.n_targets, "n_targets");
    load(cfg.virtual_fov_deg, "virtual_fov_deg");
    load(cfg.bins, "bins");
    load(cfg.gamma_max_deg, "gamma_max_deg");
    load(cfg.triplets_per_call, "triplets_per_call");
    load(cfg.min_overlap, "min_overlap");
    load(cfg.safety_distance, "safety_distance");
    load(cfg.voxel_resolution, "voxel_resolution");
    load(cfg.pixel_noise_std, "pixel_noise_std");
    load(cfg.render_downscale, "render_downscale");
    load(cfg.virtual_render_size, "virtual_render_size");
    load(cfg.bounds_padding, "bounds_padding");
    load(cfg.max_view_cameras, "max_view_cameras");
    load(cfg.sample_retry_factor, "sample_retry_factor");
    validate_config(cfg);
    return cfg;
}

} // namespace viewforge
