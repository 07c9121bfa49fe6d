#include "viewforge/labelgen/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "viewforge/geometry/visibility.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

double angle_bin_lo(const TripletSamplingConfig& cfg, int bin) {
    return cfg.alpha0_deg * std::pow(2.0, bin);
}

double angle_bin_hi(const TripletSamplingConfig& cfg, int bin) {
    return cfg.alpha0_deg * std::pow(2.0, bin + 1);
}

std::vector<TripletSample> sample_triplets(const std::vector<Camera>& cameras,
                                           const TriangleMesh& mesh,
                                           const TripletSamplingConfig& cfg, Rng& rng,
                                           std::vector<std::string>* warnings) {
    if (cfg.bins < 1 || cfg.alpha0_deg <= 0.0) {
        throw ConfigError("sample_triplets: bins must be >= 1 and alpha0 > 0");
    }
    std::vector<TripletSample> out;
    const int n = static_cast<int>(cameras.size());
    if (n < 3) {
        if (warnings) warnings->push_back("sample_triplets: fewer than 3 cameras");
        return out;
    }

    // Shared low-res renders: reused by both the overlap and visibility tests.
    const int ds = overlap_render_downscale(cameras[0].intr);
    std::vector<RenderResult> renders;
    renders.reserve(cameras.size());
    for (const auto& cam : cameras) renders.push_back(render_depth(cam, mesh, ds));

    // Candidate faces probed for common visibility and angle statistics.
    std::vector<int> candidates;
    const int n_faces = static_cast<int>(mesh.faces.size());
    if (n_faces <= cfg.max_candidate_faces) {
        candidates.resize(n_faces);
        for (int f = 0; f < n_faces; ++f) candidates[f] = f;
    } else {
        for (std::size_t f : rng.sample_without_replacement(n_faces, cfg.max_candidate_faces)) {
            candidates.push_back(static_cast<int>(f));
        }
        std::sort(candidates.begin(), candidates.end());
    }

    std::vector<double> angles;
    for (int bin = 0; bin < cfg.bins; ++bin) {
        const double lo = angle_bin_lo(cfg, bin);
        const double hi = angle_bin_hi(cfg, bin);
        std::set<std::array<int, 3>> tried;  // per bin: a triple may fit a later bin
        int found = 0;
        for (int attempt = 0; attempt < cfg.max_attempts_per_bin && found < cfg.per_bin;
             ++attempt) {
            std::array<int, 3> pick{};
            auto ids = rng.sample_without_replacement(n, 3);
            std::copy(ids.begin(), ids.end(), pick.begin());
            std::sort(pick.begin(), pick.end());
            if (!tried.insert(pick).second) continue;

            bool overlap_ok = true;
            for (int a = 0; a < 3 && overlap_ok; ++a) {
                for (int b = 0; b < 3 && overlap_ok; ++b) {
                    if (a == b) continue;
                    double ov = image_overlap_prerendered(cameras[pick[a]], cameras[pick[b]],
                                                          renders[pick[a]], renders[pick[b]]);
                    if (ov < cfg.min_overlap) overlap_ok = false;
                }
            }
            if (!overlap_ok) continue;

            std::vector<Camera> tri_cams = {cameras[pick[0]], cameras[pick[1]],
                                            cameras[pick[2]]};
            std::vector<const RenderResult*> tri_renders = {&renders[pick[0]],
                                                            &renders[pick[1]],
                                                            &renders[pick[2]]};
            auto vis = compute_visibility_prerendered(mesh, candidates, tri_cams, tri_renders);

            angles.clear();
            for (int ti = 0; ti < static_cast<int>(candidates.size()); ++ti) {
                if (vis.count(ti) != 3) continue;
                Vec3 p = mesh.centroid(candidates[ti]);
                for (int a = 0; a < 3; ++a) {
                    for (int b = a + 1; b < 3; ++b) {
                        angles.push_back(
                            triangulation_angle(tri_cams[a].pose.C, tri_cams[b].pose.C, p));
                    }
                }
            }
            if (static_cast<int>(angles.size()) < 3 * cfg.min_common_faces) continue;

            auto mid = angles.begin() + angles.size() / 2;
            std::nth_element(angles.begin(), mid, angles.end());
            double rep = *mid;
            if (rep < lo || rep >= hi) continue;

            TripletSample s;
            s.camera_ids = {cameras[pick[0]].id, cameras[pick[1]].id, cameras[pick[2]].id};
            s.angle_bin = bin;
            s.representative_angle_deg = rep;
            out.push_back(std::move(s));
            ++found;
        }
        if (found < cfg.per_bin && warnings) {
            warnings->push_back("sample_triplets: bin " + std::to_string(bin) + " filled " +
                                std::to_string(found) + "/" + std::to_string(cfg.per_bin));
        }
    }
    return out;
}

} // namespace viewforge
