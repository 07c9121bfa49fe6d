#pragma once

#include <optional>
#include <string>

#include "viewforge/types.hpp"

namespace viewforge {

struct CameraIntrinsics {
    double focal = 0.0;      // single focal length, pixels
    Vec2 pp{0.0, 0.0};       // principal point, pixels
    int width = 0;
    int height = 0;

    double fov_x() const { return 2.0 * std::atan2(0.5 * width, focal); }
    double fov_y() const { return 2.0 * std::atan2(0.5 * height, focal); }

    CameraIntrinsics scaled(int downscale) const {
        CameraIntrinsics s;
        s.focal = focal / downscale;
        s.pp = pp / downscale;
        s.width = std::max(1, width / downscale);
        s.height = std::max(1, height / downscale);
        return s;
    }
};

struct CameraPose {
    Mat3 R = Mat3::Identity();  // world -> camera rotation
    Vec3 C = Vec3::Zero();      // camera center, world

    Vec3 to_camera(const Vec3& p) const { return R * (p - C); }
    Vec3 to_world(const Vec3& pc) const { return R.transpose() * pc + C; }
    Vec3 view_dir() const { return R.row(2).transpose(); }  // optical axis, world
};

struct Camera {
    std::string id;
    CameraIntrinsics intr;
    CameraPose pose;
};

struct PixelDepth {
    Vec2 px;
    double depth = 0.0;
};

// Pinhole projection. Returns nothing for points on or behind the camera
// plane (depth <= 0). In-bounds checking is left to the caller.
std::optional<PixelDepth> project_point(const Camera& cam, const Vec3& point);

// Inverse of project_point for a given depth along the optical axis.
Vec3 unproject_pixel(const Camera& cam, const Vec2& px, double depth);

// Unit world-space direction of the viewing ray through a pixel.
Vec3 pixel_ray(const Camera& cam, const Vec2& px);

// World -> camera rotation for a camera at `eye` looking at `target`.
// `up` resolves the roll; it must not be parallel to the view direction.
Mat3 look_at(const Vec3& eye, const Vec3& target, const Vec3& up);

// Deterministic orthonormal basis (e1, e2) for the plane orthogonal to a
// unit vector w; switches reference axis near the poles.
void plane_basis(const Vec3& w, Vec3& e1, Vec3& e2);

inline bool pixel_in_bounds(const CameraIntrinsics& intr, const Vec2& px) {
    return px.x() >= 0.0 && px.x() <= intr.width - 1.0 &&
           px.y() >= 0.0 && px.y() <= intr.height - 1.0;
}

// Angle at `point` subtended by the two camera centers, degrees.
double triangulation_angle(const Vec3& center_a, const Vec3& center_b, const Vec3& point);

} // namespace viewforge
