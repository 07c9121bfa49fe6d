#pragma once

#include <array>
#include <string>

#include "viewforge/geometry/camera.hpp"

namespace viewforge {

// Three cameras on an equilateral triangle orthogonal to a shared viewing
// direction, all aimed at one point. Constructed so that every camera pair
// spans exactly the design triangulation angle at the aim point.
struct CameraTriplet {
    std::array<Camera, 3> cameras;
    Vec3 center = Vec3::Zero();  // circumcircle center (the originating position)
    Vec3 aim = Vec3::Zero();     // shared aim point
    int bin = -1;                // angular bin the design angle represents
    double design_angle_deg = 0.0;
    double gain = 0.0;
};

// Center angle of bin `bin` when [0, gamma_max) is split into `bins` equal
// angular bins.
double bin_center_angle(int bin, int bins, double gamma_max_deg);

// Circumcircle radius rho for which three cameras on it, aimed at a point at
// distance `aim_distance` along the circle normal, pairwise span `alpha_deg`
// at that point: sin(alpha/2) = (sqrt(3)/2 * rho) / sqrt(rho^2 + d^2).
// Throws GeometryError for alpha outside (0, 120) degrees.
double equilateral_radius(double aim_distance, double alpha_deg);

// Builds the triplet at `position`, viewing along unit `orientation`, aimed
// at position + aim_distance * orientation. Camera ids are
// "<id_prefix>_a|b|c". `bin` is recorded on the result.
CameraTriplet make_triplet(const Vec3& position, const Vec3& orientation, double aim_distance,
                           double alpha_deg, const CameraIntrinsics& intr,
                           const std::string& id_prefix, int bin = -1);

} // namespace viewforge
