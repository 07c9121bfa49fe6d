#include "viewforge/geometry/visibility.hpp"

#include <cmath>

namespace viewforge {

namespace {

bool centroid_visible(const TriangleMesh& mesh, int t, const Camera& cam,
                      const RenderResult& render) {
    Vec3 c = mesh.centroid(t);
    Vec3 n = mesh.raw_normal(t);
    if (n.dot(cam.pose.C - c) <= 0.0) return false;  // back-facing

    auto proj = project_point(cam, c);
    if (!proj || !pixel_in_bounds(cam.intr, proj->px)) return false;

    int x = static_cast<int>(std::lround(proj->px.x() / render.depth.downscale));
    int y = static_cast<int>(std::lround(proj->px.y() / render.depth.downscale));
    x = std::min(std::max(x, 0), render.depth.width - 1);
    y = std::min(std::max(y, 0), render.depth.height - 1);

    if (render.face_at(x, y) == t) return true;
    float d = render.depth.at(x, y);
    return std::isfinite(d) && std::abs(d - proj->depth) <= kDepthTolerance * proj->depth;
}

} // namespace

VisibilityTable compute_visibility_prerendered(const TriangleMesh& mesh,
                                               const std::vector<int>& triangles,
                                               const std::vector<Camera>& cameras,
                                               const std::vector<const RenderResult*>& renders) {
    VisibilityTable table;
    table.n_triangles = static_cast<int>(triangles.size());
    table.n_cameras = static_cast<int>(cameras.size());
    table.vis.assign(static_cast<std::size_t>(table.n_triangles) * table.n_cameras, 0);
    for (int ti = 0; ti < table.n_triangles; ++ti) {
        for (int ci = 0; ci < table.n_cameras; ++ci) {
            if (centroid_visible(mesh, triangles[ti], cameras[ci], *renders[ci])) {
                table.vis[static_cast<std::size_t>(ti) * table.n_cameras + ci] = 1;
            }
        }
    }
    return table;
}

VisibilityTable compute_visibility(const TriangleMesh& mesh,
                                   const std::vector<int>& triangles,
                                   const std::vector<Camera>& cameras,
                                   int downscale) {
    std::vector<RenderResult> renders;
    renders.reserve(cameras.size());
    std::vector<const RenderResult*> ptrs;
    for (const auto& cam : cameras) {
        renders.push_back(render_depth(cam, mesh, downscale));
        ptrs.push_back(&renders.back());
    }
    return compute_visibility_prerendered(mesh, triangles, cameras, ptrs);
}

int overlap_render_downscale(const CameraIntrinsics& intr) {
    int short_side = std::min(intr.width, intr.height);
    return std::max(1, short_side / 96);
}

double image_overlap_prerendered(const Camera& cam_a, const Camera& cam_b,
                                 const RenderResult& render_a, const RenderResult& render_b) {
    constexpr int kGrid = 32;
    int valid = 0;
    int seen = 0;
    for (int gy = 0; gy < kGrid; ++gy) {
        for (int gx = 0; gx < kGrid; ++gx) {
            Vec2 px((gx + 0.5) / kGrid * (cam_a.intr.width - 1),
                    (gy + 0.5) / kGrid * (cam_a.intr.height - 1));
            float da;
            if (!render_a.depth.sample(px, da)) continue;
            ++valid;
            Vec3 p = unproject_pixel(cam_a, px, da);
            auto proj = project_point(cam_b, p);
            if (!proj || !pixel_in_bounds(cam_b.intr, proj->px)) continue;
            float db;
            if (!render_b.depth.sample(proj->px, db)) continue;
            if (proj->depth <= db + kDepthTolerance * db) ++seen;
        }
    }
    return valid > 0 ? static_cast<double>(seen) / valid : 0.0;
}

double image_overlap(const Camera& cam_a, const Camera& cam_b, const TriangleMesh& mesh) {
    RenderResult ra = render_depth(cam_a, mesh, overlap_render_downscale(cam_a.intr));
    RenderResult rb = render_depth(cam_b, mesh, overlap_render_downscale(cam_b.intr));
    return image_overlap_prerendered(cam_a, cam_b, ra, rb);
}

} // namespace viewforge
