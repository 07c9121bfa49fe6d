#include "viewforge/geometry/camera.hpp"

#include <cmath>

#include "viewforge/util/error.hpp"

namespace viewforge {

std::optional<PixelDepth> project_point(const Camera& cam, const Vec3& point) {
    Vec3 pc = cam.pose.to_camera(point);
    if (pc.z() <= 0.0) return std::nullopt;
    PixelDepth out;
    out.depth = pc.z();
    out.px = cam.intr.focal * Vec2(pc.x() / pc.z(), pc.y() / pc.z()) + cam.intr.pp;
    return out;
}

Vec3 unproject_pixel(const Camera& cam, const Vec2& px, double depth) {
    Vec2 n = (px - cam.intr.pp) / cam.intr.focal;
    Vec3 pc(n.x() * depth, n.y() * depth, depth);
    return cam.pose.to_world(pc);
}

Vec3 pixel_ray(const Camera& cam, const Vec2& px) {
    Vec2 n = (px - cam.intr.pp) / cam.intr.focal;
    Vec3 dir_cam(n.x(), n.y(), 1.0);
    return (cam.pose.R.transpose() * dir_cam).normalized();
}

Mat3 look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
    Vec3 z = target - eye;
    double zl = z.norm();
    if (zl < 1e-12) throw GeometryError("look_at: eye and target coincide");
    z /= zl;
    Vec3 x = up.cross(z);  // note: up x z so that +x is image right for z-up scenes
    double xl = x.norm();
    if (xl < 1e-9) throw GeometryError("look_at: up parallel to view direction");
    x /= xl;
    Vec3 y = z.cross(x);
    Mat3 R;
    R.row(0) = x.transpose();
    R.row(1) = y.transpose();
    R.row(2) = z.transpose();
    return R;
}

void plane_basis(const Vec3& w, Vec3& e1, Vec3& e2) {
    Vec3 ref = std::abs(w.z()) < 0.999 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
    e1 = w.cross(ref).normalized();
    e2 = w.cross(e1);
}

double triangulation_angle(const Vec3& center_a, const Vec3& center_b, const Vec3& point) {
    Vec3 ra = center_a - point;
    Vec3 rb = center_b - point;
    double la = ra.norm();
    double lb = rb.norm();
    if (la < 1e-9 || lb < 1e-9) {
        throw GeometryError("triangulation_angle: point coincides with a camera center");
    }
    double c = ra.dot(rb) / (la * lb);
    c = std::min(1.0, std::max(-1.0, c));
    return rad2deg(std::acos(c));
}

} // namespace viewforge
