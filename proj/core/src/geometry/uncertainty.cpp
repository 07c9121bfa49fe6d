#include "viewforge/geometry/uncertainty.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "viewforge/util/error.hpp"

namespace viewforge {

Mat3 projection_normal_matrix(const Camera& cam, const Vec3& point) {
    Vec3 pc = cam.pose.to_camera(point);
    if (pc.z() <= 0.0) throw GeometryError("point_uncertainty: point not in front of camera");
    const double iz = 1.0 / pc.z();
    const double f_iz = cam.intr.focal * iz;
    // rows of d(px)/d(point): (f/z) * (r0 - (x/z) r2), (f/z) * (r1 - (y/z) r2)
    Eigen::Matrix<double, 2, 3> J;
    J.row(0) = f_iz * (cam.pose.R.row(0) - pc.x() * iz * cam.pose.R.row(2));
    J.row(1) = f_iz * (cam.pose.R.row(1) - pc.y() * iz * cam.pose.R.row(2));
    return J.transpose() * J;
}

double max_uncertainty_from_normal(const Mat3& sum_jtj, double pixel_noise_std) {
    Eigen::SelfAdjointEigenSolver<Mat3> es;
    es.computeDirect(sum_jtj);
    double lmin = es.eigenvalues()(0);
    double lmax = es.eigenvalues()(2);
    if (!(lmin > lmax * 1e-12) || !(lmin > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return pixel_noise_std * pixel_noise_std / lmin;
}

UncertaintyEstimate point_uncertainty(const std::vector<Camera>& cameras,
                                      const Vec3& point,
                                      double pixel_noise_std) {
    if (cameras.size() < 2) throw GeometryError("point_uncertainty: needs at least two cameras");
    Mat3 sum = Mat3::Zero();
    for (const auto& cam : cameras) sum += projection_normal_matrix(cam, point);

    Eigen::SelfAdjointEigenSolver<Mat3> es;
    es.computeDirect(sum);
    double lmin = es.eigenvalues()(0);
    double lmax = es.eigenvalues()(2);
    if (!(lmin > lmax * 1e-12) || !(lmin > 0.0)) {
        throw GeometryError("point_uncertainty: singular geometry (collinear viewing rays)");
    }

    const double s2 = pixel_noise_std * pixel_noise_std;
    Mat3 inv_diag = Mat3::Zero();
    for (int i = 0; i < 3; ++i) inv_diag(i, i) = s2 / es.eigenvalues()(i);
    UncertaintyEstimate out;
    out.covariance = es.eigenvectors() * inv_diag * es.eigenvectors().transpose();
    out.u = s2 / lmin;
    return out;
}

double ground_resolution(const Camera& cam, const TriangleMesh& mesh, int face) {
    double area3d = mesh.area(face);
    if (area3d < 1e-14) throw GeometryError("ground_resolution: degenerate triangle");

    Vec3 n = mesh.raw_normal(face);
    if (n.dot(cam.pose.C - mesh.centroid(face)) <= 0.0) return 0.0;

    const auto& f = mesh.faces[face];
    Vec2 p[3];
    for (int k = 0; k < 3; ++k) {
        auto proj = project_point(cam, mesh.vertices[f[k]]);
        if (!proj) return 0.0;
        p[k] = proj->px;
    }
    double area_px = 0.5 * std::abs((p[1].x() - p[0].x()) * (p[2].y() - p[0].y()) -
                                    (p[1].y() - p[0].y()) * (p[2].x() - p[0].x()));
    return area_px / area3d;
}

} // namespace viewforge
