#include "viewforge/planner/meanshift.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

constexpr int kMaxIterations = 50;
constexpr double kConvergenceRad = 1e-6;

} // namespace

DirectionMode weighted_direction_mode(const std::vector<Vec3>& rays,
                                      const std::vector<double>& weights, double bandwidth_deg) {
    if (rays.size() != weights.size()) {
        throw ConfigError("weighted_direction_mode: ray/weight count mismatch");
    }
    if (bandwidth_deg <= 0.0 || bandwidth_deg >= 180.0) {
        throw ConfigError("weighted_direction_mode: bandwidth must lie in (0, 180) deg");
    }

    std::vector<Vec3> unit(rays.size());
    bool any_positive = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        double n = rays[i].norm();
        if (n <= 0.0) throw ConfigError("weighted_direction_mode: zero-length ray");
        unit[i] = rays[i] / n;
        any_positive = any_positive || weights[i] > 0.0;
    }
    if (!any_positive) throw ConfigError("weighted_direction_mode: no positive weight");

    const double cos_bw = std::cos(deg2rad(bandwidth_deg));
    auto window_sum = [&](const Vec3& m, Vec3& mean) {
        mean.setZero();
        double w_sum = 0.0;
        for (std::size_t j = 0; j < unit.size(); ++j) {
            if (weights[j] <= 0.0) continue;
            if (m.dot(unit[j]) >= cos_bw) {
                mean += weights[j] * unit[j];
                w_sum += weights[j];
            }
        }
        return w_sum;
    };

    DirectionMode best;
    bool have_best = false;
    for (std::size_t start = 0; start < unit.size(); ++start) {
        if (weights[start] <= 0.0) continue;
        Vec3 m = unit[start];
        Vec3 mean;
        double w_sum = 0.0;
        for (int it = 0; it < kMaxIterations; ++it) {
            w_sum = window_sum(m, mean);
            double norm = mean.norm();
            if (w_sum <= 0.0 || norm <= 0.0) break;  // isolated or perfectly cancelled window
            Vec3 next = mean / norm;
            double step = std::acos(std::clamp(m.dot(next), -1.0, 1.0));
            m = next;
            if (step < kConvergenceRad) break;
        }
        w_sum = window_sum(m, mean);
        if (!have_best || w_sum > best.weight) {
            have_best = true;
            best.direction = m;
            best.weight = w_sum;
        }
    }
    return best;
}

void orient_surrogates(std::vector<SurrogateCamera>& surrogates,
                       const std::vector<TargetInfo>& targets, double bandwidth_deg,
                       double fov_deg, int frustum_size) {
    std::vector<SurrogateCamera> kept;
    kept.reserve(surrogates.size());

    std::vector<Vec3> rays;
    std::vector<double> weights;
    for (SurrogateCamera& s : surrogates) {
        rays.clear();
        weights.clear();
        for (const TriangleLink& link : s.links) {
            if (link.best_gain <= 0.0) continue;
            rays.push_back(targets[link.target].centroid - s.position);
            weights.push_back(link.best_gain);
        }
        if (rays.empty()) continue;  // nothing to gain from this position

        DirectionMode mode = weighted_direction_mode(rays, weights, bandwidth_deg);
        s.orientation = mode.direction;
        s.oriented = true;

        // keep only links inside the oriented frustum
        Camera vcam =
            make_virtual_camera("virtual", s.position, s.orientation, fov_deg, frustum_size);
        std::vector<TriangleLink> filtered;
        s.total_potential = 0.0;
        bool has_positive = false;
        for (TriangleLink& link : s.links) {
            auto proj = project_point(vcam, targets[link.target].centroid);
            if (!proj || !pixel_in_bounds(vcam.intr, proj->px)) continue;
            s.total_potential += link.best_gain;
            has_positive = has_positive || link.best_gain > 0.0;
            filtered.push_back(std::move(link));
        }
        s.links = std::move(filtered);
        if (has_positive) kept.push_back(std::move(s));
    }
    surrogates = std::move(kept);
}

} // namespace viewforge
