#include "viewforge/planner/plan.hpp"

#include <chrono>
#include <cmath>

#include "viewforge/geometry/mesh_ops.hpp"
#include "viewforge/geometry/render.hpp"
#include "viewforge/util/error.hpp"
#include "viewforge/util/rng.hpp"

namespace viewforge {

PlanResult plan_views(const PlanSnapshot& snapshot, const PlannerConfig& cfg,
                      std::uint64_t seed) {
    validate_config(cfg);
    if (snapshot.roi.empty()) throw ConfigError("plan_views: empty roi");
    if (snapshot.cameras.empty()) {
        throw ConfigError("plan_views: needs at least one captured camera");
    }

    auto t_start = std::chrono::steady_clock::now();
    PlanResult result;

    SubdivideResult sub = subdivide_roi(snapshot.mesh, snapshot.roi);
    result.working_mesh = std::move(sub.mesh);
    result.working_roi = std::move(sub.roi);
    if (result.working_roi.empty()) throw ConfigError("plan_views: roi empty after subdivision");
    const TriangleMesh& wmesh = result.working_mesh;

    Aabb mesh_bounds = wmesh.bounds();
    double pad = cfg.bounds_padding * mesh_bounds.size().norm() + cfg.safety_distance;
    Aabb bounds = mesh_bounds.padded(pad);
    DistanceField dfield = build_distance_field(wmesh, cfg.voxel_resolution, bounds);

    const CameraIntrinsics model_intr = snapshot.cameras.back().intr;
    const double bandwidth_deg =
        0.5 * rad2deg(std::min(model_intr.fov_x(), model_intr.fov_y()));

    ConfidenceLookup conf(snapshot.confidences);
    std::vector<Camera> cameras = snapshot.cameras;

    auto warn_all = [&result](const std::vector<std::string>& warnings) {
        result.warnings.insert(result.warnings.end(), warnings.begin(), warnings.end());
    };

    for (int iter = 0; iter < cfg.triplets_per_call; ++iter) {
        PlanningContext ctx;
        ctx.mesh = &wmesh;
        ctx.captured = &cameras;
        ctx.confidences = &conf;
        ctx.cfg = &cfg;
        ctx.model_intr = model_intr;

        FulfillmentResult fulfillment =
            estimate_fulfillment(cameras, wmesh, result.working_roi, snapshot.confidences, cfg,
                                 sub_seed(seed, 4u * iter));
        warn_all(fulfillment.warnings);

        TargetSelection selection = select_targets(fulfillment.records, cfg.n_targets,
                                                   sub_seed(seed, 4u * iter + 1));
        warn_all(selection.warnings);

        std::vector<TargetInfo> targets;
        targets.reserve(selection.record_indices.size());
        for (int idx : selection.record_indices) {
            const FulfillmentRecord& rec = fulfillment.records[idx];
            TargetInfo t;
            t.face = rec.face;
            t.centroid = wmesh.centroid(rec.face);
            t.fulfillment = rec.f;
            for (int c = 0; c < fulfillment.visibility.n_cameras; ++c) {
                if (fulfillment.visibility.visible(idx, c)) t.observers.push_back(c);
            }
            targets.push_back(std::move(t));
        }

        SurrogateSamples samples =
            sample_surrogates(wmesh, dfield, cfg.n_positions, bounds, cfg.safety_distance,
                              sub_seed(seed, 4u * iter + 2), cfg.sample_retry_factor);
        warn_all(samples.warnings);

        inverse_visibility(wmesh, targets, samples.surrogates, cfg.virtual_fov_deg,
                           cfg.virtual_render_size);
        compute_potential_gains(ctx, samples.surrogates, targets);
        orient_surrogates(samples.surrogates, targets, bandwidth_deg, cfg.virtual_fov_deg,
                          cfg.virtual_render_size);
        if (samples.surrogates.empty()) {
            result.warnings.push_back("plan_views: iteration " + std::to_string(iter) +
                                      ": no surrogate with positive potential gain");
            break;
        }

        BestTripletSearch search = best_triplet(ctx, samples.surrogates, targets, dfield);
        if (!search.found || search.gain <= 0.0) break;

        CameraTriplet planned = search.best;
        static const char* kSuffix[3] = {"_a", "_b", "_c"};
        for (int j = 0; j < 3; ++j) {
            planned.cameras[j].id = "plan" + std::to_string(iter) + kSuffix[j];
            cameras.push_back(planned.cameras[j]);
        }
        result.triplets.push_back(std::move(planned));
    }

    result.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

std::vector<int> roi_from_polygon(const TriangleMesh& mesh, const Camera& camera,
                                  const std::vector<Vec2>& polygon_px, int downscale) {
    if (polygon_px.size() < 3) throw ConfigError("roi_from_polygon: polygon needs >= 3 vertices");
    if (downscale < 1) throw ConfigError("roi_from_polygon: downscale must be >= 1");

    // even-odd rule on full-resolution pixel coordinates
    auto inside = [&polygon_px](double x, double y) {
        bool in = false;
        for (std::size_t i = 0, j = polygon_px.size() - 1; i < polygon_px.size(); j = i++) {
            double xi = polygon_px[i].x(), yi = polygon_px[i].y();
            double xj = polygon_px[j].x(), yj = polygon_px[j].y();
            if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
        }
        return in;
    };

    RenderResult render = render_depth(camera, mesh, downscale);
    std::vector<std::uint8_t> hit(mesh.faces.size(), 0);
    for (int y = 0; y < render.depth.height; ++y) {
        for (int x = 0; x < render.depth.width; ++x) {
            std::int32_t face = render.face_at(x, y);
            if (face < 0 || hit[face]) continue;
            if (inside(x * static_cast<double>(downscale), y * static_cast<double>(downscale))) {
                hit[face] = 1;
            }
        }
    }
    std::vector<int> roi;
    for (std::size_t f = 0; f < hit.size(); ++f) {
        if (hit[f]) roi.push_back(static_cast<int>(f));
    }
    return roi;
}

} // namespace viewforge
