#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <limits>

namespace viewforge {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kInvalidDepth = std::numeric_limits<double>::infinity();

struct Aabb {
    Vec3 lo{Vec3::Constant(std::numeric_limits<double>::infinity())};
    Vec3 hi{Vec3::Constant(-std::numeric_limits<double>::infinity())};

    bool empty() const { return !(lo.x() <= hi.x()); }
    void extend(const Vec3& p) { lo = lo.cwiseMin(p); hi = hi.cwiseMax(p); }
    void extend(const Aabb& o) { lo = lo.cwiseMin(o.lo); hi = hi.cwiseMax(o.hi); }
    Vec3 center() const { return 0.5 * (lo + hi); }
    Vec3 size() const { return hi - lo; }
    Aabb padded(double m) const { return {lo - Vec3::Constant(m), hi + Vec3::Constant(m)}; }
    bool contains(const Vec3& p) const {
        return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
    }
    double distance_outside(const Vec3& p) const {
        Vec3 d = (lo - p).cwiseMax(p - hi).cwiseMax(0.0);
        return d.norm();
    }
};

inline double deg2rad(double d) { return d * (M_PI / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / M_PI); }

} // namespace viewforge
