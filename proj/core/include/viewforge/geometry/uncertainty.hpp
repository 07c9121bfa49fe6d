#pragma once

#include <vector>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

struct UncertaintyEstimate {
    Mat3 covariance = Mat3::Zero();
    double u = 0.0;  // largest covariance eigenvalue, m^2
};

// First-order propagation of i.i.d. pixel noise through triangulation:
// cov = sigma^2 (J^T J)^-1 with one stacked 2x3 projection Jacobian per
// camera, evaluated at `point`. Throws GeometryError when the point is not in
// front of every camera or the normal matrix is rank deficient (e.g. all
// viewing rays collinear).
UncertaintyEstimate point_uncertainty(const std::vector<Camera>& cameras,
                                      const Vec3& point,
                                      double pixel_noise_std);

// 3x3 contribution J^T J of a single camera (no noise scaling). Building
// blocks for callers that evaluate many camera subsets at one point.
Mat3 projection_normal_matrix(const Camera& cam, const Vec3& point);

// Largest eigenvalue of sigma^2 * (sum of normal matrices)^-1, or +inf when
// the sum is (numerically) singular.
double max_uncertainty_from_normal(const Mat3& sum_jtj, double pixel_noise_std);

// Projected pixel area per unit surface area (px/m^2) of a triangle in a
// camera. 0 for back-facing triangles or any vertex on/behind the camera
// plane. Error for degenerate (zero-area) triangles.
double ground_resolution(const Camera& cam, const TriangleMesh& mesh, int face);

} // namespace viewforge
