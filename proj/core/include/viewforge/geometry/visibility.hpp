#pragma once

#include <vector>

#include "viewforge/geometry/render.hpp"

namespace viewforge {

// Relative depth agreement tolerance used by visibility and overlap checks.
inline constexpr double kDepthTolerance = 0.01;

// Row-major [triangle][camera] boolean table.
struct VisibilityTable {
    int n_triangles = 0;
    int n_cameras = 0;
    std::vector<std::uint8_t> vis;

    bool visible(int t, int c) const { return vis[static_cast<std::size_t>(t) * n_cameras + c] != 0; }
    int count(int t) const {
        int n = 0;
        for (int c = 0; c < n_cameras; ++c) n += visible(t, c);
        return n;
    }
};

// A triangle is visible in a camera iff its centroid projects in front of the
// camera and inside the image, the face is oriented toward the camera, and the
// z-buffer either reports this face or agrees with the centroid depth within
// kDepthTolerance (relative).
VisibilityTable compute_visibility(const TriangleMesh& mesh,
                                   const std::vector<int>& triangles,
                                   const std::vector<Camera>& cameras,
                                   int downscale = 1);

// Same test against prerendered buffers (one per camera, same order).
VisibilityTable compute_visibility_prerendered(const TriangleMesh& mesh,
                                               const std::vector<int>& triangles,
                                               const std::vector<Camera>& cameras,
                                               const std::vector<const RenderResult*>& renders);

// Fraction of a 32x32 grid of a's pixels whose rendered 3D point is visible
// (in-bounds, unoccluded within kDepthTolerance) in b. Denominator counts
// grid pixels where a sees geometry; 0.0 when a sees none.
double image_overlap(const Camera& cam_a, const Camera& cam_b, const TriangleMesh& mesh);

// Overlap against cached renders (must match the cameras and mesh).
double image_overlap_prerendered(const Camera& cam_a, const Camera& cam_b,
                                 const RenderResult& render_a, const RenderResult& render_b);

// Internal render scale used by image_overlap: coarse but fine enough for the
// 32x32 probe grid.
int overlap_render_downscale(const CameraIntrinsics& intr);

} // namespace viewforge
