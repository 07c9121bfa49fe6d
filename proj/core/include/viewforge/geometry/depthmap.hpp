#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "viewforge/types.hpp"

namespace viewforge {

// Per-pixel depth along the optical axis. Invalid pixels hold +inf.
// Dimensions are the source camera's divided by `downscale`.
struct DepthMap {
    std::string camera_id;
    int width = 0;
    int height = 0;
    int downscale = 1;
    std::vector<float> depths;

    static DepthMap invalid_map(const std::string& id, int w, int h, int ds = 1) {
        DepthMap d;
        d.camera_id = id;
        d.width = w;
        d.height = h;
        d.downscale = ds;
        d.depths.assign(static_cast<std::size_t>(w) * h,
                        std::numeric_limits<float>::infinity());
        return d;
    }

    float& at(int x, int y) { return depths[static_cast<std::size_t>(y) * width + x]; }
    float at(int x, int y) const { return depths[static_cast<std::size_t>(y) * width + x]; }
    bool valid(int x, int y) const { return std::isfinite(at(x, y)); }

    bool contains(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    // Nearest sample for a full-resolution pixel coordinate.
    bool sample(const Vec2& px_fullres, float& out) const {
        int x = static_cast<int>(std::lround(px_fullres.x() / downscale));
        int y = static_cast<int>(std::lround(px_fullres.y() / downscale));
        x = std::min(std::max(x, 0), width - 1);
        y = std::min(std::max(y, 0), height - 1);
        out = at(x, y);
        return std::isfinite(out);
    }

    std::size_t valid_count() const {
        std::size_t n = 0;
        for (float d : depths) n += std::isfinite(d) ? 1 : 0;
        return n;
    }
};

} // namespace viewforge
