#pragma once

// Independent ray-cast reference used to validate the z-buffer rasterizer and
// visibility decisions. Intentionally brute force: every ray tests every face.

#include <cmath>
#include <limits>
#include <optional>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/mesh.hpp"

namespace vftest {

using viewforge::Camera;
using viewforge::TriangleMesh;
using viewforge::Vec2;
using viewforge::Vec3;

struct RayHit {
    double t = 0.0;     // ray parameter
    int face = -1;
};

// Moeller-Trumbore, no backface culling.
inline std::optional<double> intersect_triangle(const Vec3& orig, const Vec3& dir,
                                                const Vec3& v0, const Vec3& v1, const Vec3& v2) {
    const double eps = 1e-12;
    Vec3 e1 = v1 - v0;
    Vec3 e2 = v2 - v0;
    Vec3 pvec = dir.cross(e2);
    double det = e1.dot(pvec);
    if (std::abs(det) < eps) return std::nullopt;
    double inv_det = 1.0 / det;
    Vec3 tvec = orig - v0;
    double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    Vec3 qvec = tvec.cross(e1);
    double v = dir.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    double t = e2.dot(qvec) * inv_det;
    if (t <= 0.0) return std::nullopt;
    return t;
}

inline std::optional<RayHit> raycast(const TriangleMesh& mesh, const Vec3& orig, const Vec3& dir) {
    RayHit best;
    best.t = std::numeric_limits<double>::infinity();
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        const auto& tri = mesh.faces[f];
        auto t = intersect_triangle(orig, dir, mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                    mesh.vertices[tri[2]]);
        if (t && *t < best.t) {
            best.t = *t;
            best.face = f;
        }
    }
    if (best.face < 0) return std::nullopt;
    return best;
}

// Depth along the optical axis for the ray through pixel (x, y) of the
// downscaled camera, or +inf for a miss.
inline double raycast_depth(const Camera& cam, const TriangleMesh& mesh, int x, int y,
                            int downscale, int* face = nullptr) {
    Camera scaled = cam;
    scaled.intr = cam.intr.scaled(downscale);
    Vec3 dir = viewforge::pixel_ray(scaled, Vec2(x, y));
    auto hit = raycast(mesh, cam.pose.C, dir);
    if (face) *face = hit ? hit->face : -1;
    if (!hit) return std::numeric_limits<double>::infinity();
    Vec3 p = cam.pose.C + hit->t * dir;
    return cam.pose.to_camera(p).z();
}

// True when an unobstructed straight segment links a and b (exclusive of a
// small guard band at both ends).
inline bool segment_clear(const TriangleMesh& mesh, const Vec3& a, const Vec3& b,
                          double guard = 1e-6) {
    Vec3 d = b - a;
    double len = d.norm();
    if (len < 2.0 * guard) return true;
    Vec3 dir = d / len;
    Vec3 orig = a + guard * dir;
    auto hit = raycast(mesh, orig, dir);
    return !hit || hit->t >= len - 2.0 * guard;
}

} // namespace vftest
