#pragma once

#include <cstdint>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/depthmap.hpp"
#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

// Depth render with a parallel face-id buffer (-1 where no face covers the
// pixel). face_ids has the same layout as depth.depths.
struct RenderResult {
    DepthMap depth;
    std::vector<std::int32_t> face_ids;

    std::int32_t face_at(int x, int y) const {
        return face_ids[static_cast<std::size_t>(y) * depth.width + x];
    }
};

// Software z-buffer rasterization. Pixel (x, y) is sampled at continuous
// image coordinate (x, y) of the downscaled camera; depth is measured along
// the optical axis and interpolated perspective-correctly. Faces are
// near-clipped, not culled by orientation.
RenderResult render_depth(const Camera& cam, const TriangleMesh& mesh, int downscale = 1);

} // namespace viewforge
