#include "viewforge/geometry/render.hpp"

#include <algorithm>
#include <cmath>

namespace viewforge {

namespace {

constexpr double kZNear = 1e-6;

struct ClipVert {
    Vec3 pc;  // camera space
};

// Clip a camera-space triangle against z >= kZNear. Emits 0, 3 or 4 vertices.
int clip_near(const Vec3 in[3], Vec3 out[4]) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const Vec3& a = in[i];
        const Vec3& b = in[(i + 1) % 3];
        bool ain = a.z() >= kZNear;
        bool bin = b.z() >= kZNear;
        if (ain) out[n++] = a;
        if (ain != bin) {
            double t = (kZNear - a.z()) / (b.z() - a.z());
            out[n++] = a + t * (b - a);
        }
    }
    return n;
}

} // namespace

RenderResult render_depth(const Camera& cam, const TriangleMesh& mesh, int downscale) {
    CameraIntrinsics intr = cam.intr.scaled(downscale);
    const int W = intr.width;
    const int H = intr.height;

    RenderResult rr;
    rr.depth = DepthMap::invalid_map(cam.id, W, H, downscale);
    rr.face_ids.assign(static_cast<std::size_t>(W) * H, -1);

    const double f = intr.focal;
    const Vec2 pp = intr.pp;

    Vec3 tri[3];
    Vec3 poly[4];
    for (int fi = 0; fi < static_cast<int>(mesh.faces.size()); ++fi) {
        const auto& face = mesh.faces[fi];
        for (int k = 0; k < 3; ++k) tri[k] = cam.pose.to_camera(mesh.vertices[face[k]]);
        if (tri[0].z() < kZNear && tri[1].z() < kZNear && tri[2].z() < kZNear) continue;

        int n = clip_near(tri, poly);
        for (int sub = 0; sub < n - 2; ++sub) {
            // fan triangulation of the clipped polygon
            const Vec3& a = poly[0];
            const Vec3& b = poly[sub + 1];
            const Vec3& c = poly[sub + 2];

            Vec2 pa = f * Vec2(a.x() / a.z(), a.y() / a.z()) + pp;
            Vec2 pb = f * Vec2(b.x() / b.z(), b.y() / b.z()) + pp;
            Vec2 pc = f * Vec2(c.x() / c.z(), c.y() / c.z()) + pp;

            double area = (pb.x() - pa.x()) * (pc.y() - pa.y()) -
                          (pb.y() - pa.y()) * (pc.x() - pa.x());
            if (std::abs(area) < 1e-12) continue;

            double minx = std::min({pa.x(), pb.x(), pc.x()});
            double maxx = std::max({pa.x(), pb.x(), pc.x()});
            double miny = std::min({pa.y(), pb.y(), pc.y()});
            double maxy = std::max({pa.y(), pb.y(), pc.y()});
            int x0 = std::max(0, static_cast<int>(std::ceil(minx)));
            int x1 = std::min(W - 1, static_cast<int>(std::floor(maxx)));
            int y0 = std::max(0, static_cast<int>(std::ceil(miny)));
            int y1 = std::min(H - 1, static_cast<int>(std::floor(maxy)));
            if (x0 > x1 || y0 > y1) continue;

            const double iza = 1.0 / a.z();
            const double izb = 1.0 / b.z();
            const double izc = 1.0 / c.z();
            const double inv_area = 1.0 / area;

            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    double w0 = (pc.x() - pb.x()) * (y - pb.y()) - (pc.y() - pb.y()) * (x - pb.x());
                    double w1 = (pa.x() - pc.x()) * (y - pc.y()) - (pa.y() - pc.y()) * (x - pc.x());
                    double w2 = (pb.x() - pa.x()) * (y - pa.y()) - (pb.y() - pa.y()) * (x - pa.x());
                    w0 *= inv_area;
                    w1 *= inv_area;
                    w2 *= inv_area;
                    if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
                    double invz = w0 * iza + w1 * izb + w2 * izc;
                    if (invz <= 0.0) continue;
                    double z = 1.0 / invz;
                    std::size_t idx = static_cast<std::size_t>(y) * W + x;
                    if (z < rr.depth.depths[idx]) {
                        rr.depth.depths[idx] = static_cast<float>(z);
                        rr.face_ids[idx] = fi;
                    }
                }
            }
        }
    }
    return rr;
}

} // namespace viewforge
