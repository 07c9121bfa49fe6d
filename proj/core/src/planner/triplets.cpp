#include "viewforge/planner/triplets.hpp"

#include <cmath>

#include "viewforge/util/error.hpp"

namespace viewforge {

double bin_center_angle(int bin, int bins, double gamma_max_deg) {
    if (bins < 1 || bin < 0 || bin >= bins) throw ConfigError("bin_center_angle: bin out of range");
    return (bin + 0.5) * gamma_max_deg / bins;
}

double equilateral_radius(double aim_distance, double alpha_deg) {
    if (aim_distance <= 0.0) throw GeometryError("equilateral_radius: aim distance must be > 0");
    if (alpha_deg <= 0.0 || alpha_deg >= 120.0) {
        throw GeometryError("equilateral_radius: triangulation angle must lie in (0, 120) deg");
    }
    double s = std::sin(0.5 * deg2rad(alpha_deg));
    return aim_distance * s / std::sqrt(0.75 - s * s);
}

CameraTriplet make_triplet(const Vec3& position, const Vec3& orientation, double aim_distance,
                           double alpha_deg, const CameraIntrinsics& intr,
                           const std::string& id_prefix, int bin) {
    Vec3 w = orientation.normalized();
    double rho = equilateral_radius(aim_distance, alpha_deg);

    Vec3 e1, e2;
    plane_basis(w, e1, e2);

    CameraTriplet triplet;
    triplet.center = position;
    triplet.aim = position + aim_distance * w;
    triplet.bin = bin;
    triplet.design_angle_deg = alpha_deg;

    static const char* kSuffix[3] = {"_a", "_b", "_c"};
    for (int j = 0; j < 3; ++j) {
        double theta = 2.0 * M_PI * j / 3.0;
        Vec3 vertex = position + rho * (std::cos(theta) * e1 + std::sin(theta) * e2);

        Vec3 view = (triplet.aim - vertex).normalized();
        // roll reference: first basis axis not aligned with the view ray
        Vec3 up = w;
        if (std::abs(view.dot(up)) > 0.9) up = e1;
        if (std::abs(view.dot(up)) > 0.9) up = e2;

        Camera cam;
        cam.id = id_prefix + kSuffix[j];
        cam.intr = intr;
        cam.pose.R = look_at(vertex, triplet.aim, up);
        cam.pose.C = vertex;
        triplet.cameras[j] = cam;
    }
    return triplet;
}

} // namespace viewforge
