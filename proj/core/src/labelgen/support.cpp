#include "viewforge/labelgen/support.hpp"

#include <cmath>

#include "viewforge/geometry/uncertainty.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

SupportMetrics support_metrics(const TripletSummary& query, const TripletSummary& reference,
                               const Vec3& point) {
    Vec3 vq = query.mean_center - point;
    Vec3 vr = reference.mean_center - point;
    double nq = vq.norm();
    double nr = vr.norm();
    if (nq < 1e-9 || nr < 1e-9) {
        throw GeometryError("support_metrics: point coincides with a mean camera center");
    }
    double c = vq.dot(vr) / (nq * nr);
    c = std::min(1.0, std::max(-1.0, c));
    SupportMetrics m;
    m.alpha_diff_deg = rad2deg(std::acos(c));
    m.s_res = (reference.mean_focal / nr) / (query.mean_focal / nq);
    return m;
}

MeasurementGrid make_measurement_grid(const Camera& camera, const DepthMap& dm,
                                      const std::array<Camera, 3>& triplet_cameras,
                                      double pixel_noise_std) {
    MeasurementGrid g;
    g.camera_id = camera.id;
    g.width = dm.width;
    g.height = dm.height;
    g.downscale = dm.downscale;
    std::size_t n = static_cast<std::size_t>(dm.width) * dm.height;
    g.depth.assign(n, std::numeric_limits<float>::infinity());
    g.sigma.assign(n, std::numeric_limits<float>::infinity());
    g.point.assign(n, Vec3::Zero());
    g.support.assign(n, 0);

    Camera scaled = camera;
    scaled.intr = camera.intr.scaled(dm.downscale);

    std::vector<Camera> triplet(triplet_cameras.begin(), triplet_cameras.end());
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            float d = dm.at(x, y);
            if (!std::isfinite(d)) continue;
            Vec3 p = unproject_pixel(scaled, Vec2(x, y), d);
            bool in_front = true;
            for (const auto& c : triplet_cameras) {
                if (c.pose.to_camera(p).z() <= 0.0) {
                    in_front = false;
                    break;
                }
            }
            if (!in_front) continue;
            std::size_t i = g.index(x, y);
            try {
                auto est = point_uncertainty(triplet, p, pixel_noise_std);
                if (!std::isfinite(est.u) || est.u <= 0.0) continue;
                g.sigma[i] = static_cast<float>(std::sqrt(est.u));
            } catch (const GeometryError&) {
                continue;
            }
            g.depth[i] = d;
            g.point[i] = p;
        }
    }
    return g;
}

namespace {

// Scatter pass: marks, for one reference record, every query pixel that holds
// a measurement of the reference within positive_sigma of the query depth.
void mark_consistent(const MeasurementGrid& query_grid, const Camera& query_camera,
                     const TripletRecord& ref, double positive_sigma, std::uint64_t bit_mask,
                     std::size_t word, std::size_t words, std::vector<std::uint64_t>& bits) {
    Camera scaled = query_camera;
    scaled.intr = query_camera.intr.scaled(query_grid.downscale);
    for (const auto& rg : ref.grids) {
        std::size_t n = static_cast<std::size_t>(rg.width) * rg.height;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(rg.depth[i]) || !std::isfinite(rg.sigma[i])) continue;
            auto proj = project_point(scaled, rg.point[i]);
            if (!proj) continue;
            int x = static_cast<int>(std::lround(proj->px.x()));
            int y = static_cast<int>(std::lround(proj->px.y()));
            if (x < 0 || x >= query_grid.width || y < 0 || y >= query_grid.height) continue;
            std::size_t qi = query_grid.index(x, y);
            if (!std::isfinite(query_grid.depth[qi]) || !std::isfinite(query_grid.sigma[qi])) {
                continue;
            }
            if (std::abs(proj->depth - query_grid.depth[qi]) <=
                positive_sigma * query_grid.sigma[qi]) {
                bits[qi * words + word] |= bit_mask;
            }
        }
    }
}

} // namespace

void compute_support(TripletRecord& query, const std::vector<const TripletRecord*>& references,
                     const SupportConfig& cfg) {
    const std::size_t n_refs = references.size();
    if (n_refs == 0) return;
    const std::size_t words = (n_refs + 63) / 64;
    const double cos_alpha_min = std::cos(deg2rad(cfg.alpha_min_deg));

    for (int qi = 0; qi < 3; ++qi) {
        MeasurementGrid& grid = query.grids[qi];
        const Camera& qcam = query.cameras[qi];
        std::size_t npx = static_cast<std::size_t>(grid.width) * grid.height;

        std::vector<std::uint64_t> consistent(npx * words, 0);
        for (std::size_t r = 0; r < n_refs; ++r) {
            mark_consistent(grid, qcam, *references[r], cfg.positive_sigma,
                            std::uint64_t{1} << (r % 64), r / 64, words, consistent);
        }

        std::vector<Vec3> cluster_dirs;
        std::vector<char> cluster_granted;
        for (std::size_t i = 0; i < npx; ++i) {
            if (!std::isfinite(grid.depth[i]) || !std::isfinite(grid.sigma[i])) continue;
            const Vec3& p = grid.point[i];
            Vec3 vq = query.summary.mean_center - p;
            double nq = vq.norm();
            if (nq < 1e-9) continue;
            vq /= nq;
            double res_q = query.summary.mean_focal / nq;

            cluster_dirs.clear();
            cluster_granted.clear();
            int count = 0;
            for (std::size_t r = 0; r < n_refs; ++r) {
                const TripletRecord& ref = *references[r];
                Vec3 vr = ref.summary.mean_center - p;
                double nr = vr.norm();
                if (nr < 1e-9) continue;
                vr /= nr;

                // greedy viewpoint clustering: join the first cluster whose
                // representative direction subtends < alpha_min at p
                int cluster = -1;
                for (std::size_t k = 0; k < cluster_dirs.size(); ++k) {
                    if (vr.dot(cluster_dirs[k]) > cos_alpha_min) {
                        cluster = static_cast<int>(k);
                        break;
                    }
                }
                if (cluster < 0) {
                    cluster = static_cast<int>(cluster_dirs.size());
                    cluster_dirs.push_back(vr);
                    cluster_granted.push_back(0);
                }
                if (cluster_granted[cluster]) continue;

                bool different = vr.dot(vq) < cos_alpha_min;  // alpha_diff > alpha_min
                if (!different) {
                    double s_res = (ref.summary.mean_focal / nr) / res_q;
                    different = s_res > cfg.s_min;
                }
                if (!different) continue;

                bool is_consistent =
                    (consistent[i * words + r / 64] >> (r % 64)) & std::uint64_t{1};
                if (!is_consistent) continue;

                cluster_granted[cluster] = 1;
                ++count;
            }
            grid.support[i] = count;
        }
    }
}

} // namespace viewforge
