#include "viewforge/labelgen/missing.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/geometry/render.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

float median_of(std::vector<float>& v) {
    auto mid = v.begin() + v.size() / 2;
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

} // namespace

DepthMap augment_depthmap(const DepthMap& dm, const std::vector<float>* sigma,
                          const AugmentConfig& cfg) {
    if (cfg.window < 1 || cfg.window % 2 == 0) {
        throw ConfigError("augment_depthmap: window must be odd and positive");
    }
    DepthMap out = dm;
    const int r = cfg.window / 2;
    const int min_valid =
        static_cast<int>(std::ceil(cfg.min_valid_fraction * cfg.window * cfg.window));

    std::vector<float> depths;
    std::vector<float> sigmas;
    depths.reserve(static_cast<std::size_t>(cfg.window) * cfg.window);
    sigmas.reserve(depths.capacity());
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (dm.valid(x, y)) continue;
            depths.clear();
            sigmas.clear();
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if (!dm.contains(nx, ny) || !dm.valid(nx, ny)) continue;
                    depths.push_back(dm.at(nx, ny));
                    if (sigma) {
                        float s = (*sigma)[static_cast<std::size_t>(ny) * dm.width + nx];
                        if (std::isfinite(s)) sigmas.push_back(s);
                    }
                }
            }
            if (static_cast<int>(depths.size()) < min_valid) continue;

            float med = median_of(depths);
            float s = !sigmas.empty() ? median_of(sigmas)
                                      : static_cast<float>(cfg.fallback_sigma_rel) * med;
            auto [lo, hi] = std::minmax_element(depths.begin(), depths.end());
            if (*hi - *lo <= cfg.spread_sigma_factor * s) out.at(x, y) = med;
        }
    }
    return out;
}

std::vector<std::uint8_t> detect_missing_prerendered(const DepthMap& dm,
                                                     const DepthMap& shrunk_depth,
                                                     const DepthMap& expanded_depth,
                                                     const std::vector<float>* sigma,
                                                     const AugmentConfig& cfg) {
    if (shrunk_depth.width != dm.width || shrunk_depth.height != dm.height ||
        expanded_depth.width != dm.width || expanded_depth.height != dm.height) {
        throw ConfigError("detect_missing: mesh renders must match the depthmap size");
    }
    DepthMap augmented = augment_depthmap(dm, sigma, cfg);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(dm.width) * dm.height, 0);
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (dm.valid(x, y) || augmented.valid(x, y)) continue;
            if (shrunk_depth.valid(x, y) && expanded_depth.valid(x, y)) {
                mask[static_cast<std::size_t>(y) * dm.width + x] = 1;
            }
        }
    }
    return mask;
}

std::vector<std::uint8_t> detect_missing(const DepthMap& dm, const Camera& camera,
                                         const TriangleMesh& shrunk,
                                         const TriangleMesh& expanded,
                                         const std::vector<float>* sigma,
                                         const AugmentConfig& cfg) {
    RenderResult rs = render_depth(camera, shrunk, dm.downscale);
    RenderResult re = render_depth(camera, expanded, dm.downscale);
    return detect_missing_prerendered(dm, rs.depth, re.depth, sigma, cfg);
}

} // namespace viewforge
