#include "viewforge/planner/surrogates.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/geometry/closest_point.hpp"
#include "viewforge/geometry/render.hpp"
#include "viewforge/util/error.hpp"
#include "viewforge/util/rng.hpp"

namespace viewforge {

SurrogateSamples sample_surrogates(const TriangleMesh& mesh, const DistanceField& dfield,
                                   int n_positions, const Aabb& bounds, double safety_distance,
                                   std::uint64_t seed, int retry_factor) {
    if (n_positions < 1) throw ConfigError("sample_surrogates: n_positions must be >= 1");
    if (bounds.empty()) throw ConfigError("sample_surrogates: empty bounds");
    if (safety_distance < 0.0) throw ConfigError("sample_surrogates: negative safety distance");
    if (retry_factor < 1) throw ConfigError("sample_surrogates: retry_factor must be >= 1");

    // exact fallback for positions the conservative voxel bound rejects
    const bool have_mesh = !mesh.faces.empty();
    MeshDistanceQuery query(mesh);

    SurrogateSamples out;
    out.surrogates.reserve(n_positions);
    Rng rng(seed);
    const std::size_t max_attempts =
        static_cast<std::size_t>(retry_factor) * static_cast<std::size_t>(n_positions);
    Vec3 lo = bounds.lo, size = bounds.size();
    std::size_t attempts = 0;
    while (static_cast<int>(out.surrogates.size()) < n_positions && attempts < max_attempts) {
        ++attempts;
        Vec3 p = lo + Vec3(rng.uniform() * size.x(), rng.uniform() * size.y(),
                           rng.uniform() * size.z());
        bool clear = dfield.clearance_bound(p) >= safety_distance;
        if (!clear && have_mesh) clear = query.distance(p) >= safety_distance;
        if (!clear && !have_mesh) clear = true;  // nothing to collide with
        if (!clear) continue;
        SurrogateCamera s;
        s.position = p;
        out.surrogates.push_back(std::move(s));
    }
    if (out.surrogates.empty()) {
        throw ConfigError("sample_surrogates: no free-space position found within the bounds");
    }
    if (static_cast<int>(out.surrogates.size()) < n_positions) {
        out.warnings.push_back("sample_surrogates: accepted only " +
                               std::to_string(out.surrogates.size()) + " of " +
                               std::to_string(n_positions) + " requested positions");
    }
    return out;
}

Camera make_virtual_camera(const std::string& id, const Vec3& center, const Vec3& axis,
                           double fov_deg, int size) {
    if (size < 1) throw ConfigError("make_virtual_camera: size must be >= 1");
    if (fov_deg <= 0.0 || fov_deg >= 180.0) {
        throw ConfigError("make_virtual_camera: fov must lie in (0, 180) deg");
    }
    Vec3 w = axis.normalized();
    Vec3 e1, e2;
    plane_basis(w, e1, e2);

    Camera cam;
    cam.id = id;
    cam.intr.width = size;
    cam.intr.height = size;
    cam.intr.focal = 0.5 * size / std::tan(0.5 * deg2rad(fov_deg));
    cam.intr.pp = Vec2(0.5 * (size - 1), 0.5 * (size - 1));
    cam.pose.R = look_at(center, center + w, e1);
    cam.pose.C = center;
    return cam;
}

void inverse_visibility(const TriangleMesh& mesh, const std::vector<TargetInfo>& targets,
                        std::vector<SurrogateCamera>& surrogates, double fov_deg,
                        int render_size) {
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const TargetInfo& t = targets[ti];
        Camera vcam = make_virtual_camera("virtual", t.centroid, mesh.normal(t.face), fov_deg,
                                          render_size);
        RenderResult render = render_depth(vcam, mesh);

        for (SurrogateCamera& s : surrogates) {
            auto proj = project_point(vcam, s.position);
            if (!proj || !pixel_in_bounds(vcam.intr, proj->px)) continue;
            int x = static_cast<int>(std::lround(proj->px.x()));
            int y = static_cast<int>(std::lround(proj->px.y()));
            float buffered = render.depth.at(x, y);
            if (std::isfinite(buffered) &&
                proj->depth > buffered * (1.0 + kDepthTolerance)) {
                continue;  // occluded
            }
            TriangleLink link;
            link.target = static_cast<int>(ti);
            s.links.push_back(std::move(link));
        }
    }
}

double hypothetical_confidence(const PlanningContext& ctx, const TargetInfo& target,
                               const Vec3& position, double angle_deg) {
    const std::vector<Camera>& captured = *ctx.captured;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int c : target.observers) {
        if (ctx.confidences->find(captured[c].id) == nullptr) continue;
        double d = (captured[c].pose.C - position).squaredNorm();
        if (d < best_dist) {
            best_dist = d;
            best = c;
        }
    }
    if (best < 0) return 0.5;
    return confidence_at(*ctx.confidences, captured[best], target.centroid, angle_deg);
}

double target_gain_term(const PlanningContext& ctx, const CameraTriplet& c3,
                        const TargetInfo& target) {
    std::array<const Camera*, 3> cams{&c3.cameras[0], &c3.cameras[1], &c3.cameras[2]};
    double angle = min_pairwise_angle(cams, target.centroid);
    double f_conf = hypothetical_confidence(ctx, target, c3.center, angle);
    TripletFactors tf =
        evaluate_triplet_with_confidence(*ctx.mesh, target.face, cams, f_conf, *ctx.cfg);
    return std::max(tf.f - target.fulfillment, 0.0);
}

std::vector<double> potential_gain(const PlanningContext& ctx, const SurrogateCamera& surrogate,
                                   const TargetInfo& target) {
    const PlannerConfig& cfg = *ctx.cfg;
    Vec3 to_target = target.centroid - surrogate.position;
    double d = to_target.norm();
    std::vector<double> gains(cfg.bins, 0.0);
    if (d <= 0.0) return gains;
    Vec3 dir = to_target / d;
    for (int bin = 0; bin < cfg.bins; ++bin) {
        double alpha = bin_center_angle(bin, cfg.bins, cfg.gamma_max_deg);
        if (alpha >= 120.0) continue;  // geometrically infeasible design angle
        CameraTriplet c3 =
            make_triplet(surrogate.position, dir, d, alpha, ctx.model_intr, "hyp", bin);
        gains[bin] = target_gain_term(ctx, c3, target);
    }
    return gains;
}

void compute_potential_gains(const PlanningContext& ctx,
                             std::vector<SurrogateCamera>& surrogates,
                             const std::vector<TargetInfo>& targets) {
    for (SurrogateCamera& s : surrogates) {
        s.total_potential = 0.0;
        for (TriangleLink& link : s.links) {
            link.gain_per_bin = potential_gain(ctx, s, targets[link.target]);
            link.best_gain = 0.0;
            for (double g : link.gain_per_bin) link.best_gain = std::max(link.best_gain, g);
            s.total_potential += link.best_gain;
        }
    }
}

} // namespace viewforge
