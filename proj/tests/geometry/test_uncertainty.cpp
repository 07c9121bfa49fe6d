#include <doctest.h>

#include "support/builders.hpp"
#include "support/montecarlo.hpp"
#include "viewforge/geometry/uncertainty.hpp"
#include "viewforge/util/error.hpp"

using namespace viewforge;

namespace {

// Two cameras at distance d from the origin, separated by `angle_deg` as seen
// from the measured point at the origin.
std::vector<Camera> angle_pair(double angle_deg, double d = 5.0, double focal = 800.0) {
    double half = deg2rad(angle_deg) / 2.0;
    Vec3 a(d * std::sin(half), 0, d * std::cos(half));
    Vec3 b(-d * std::sin(half), 0, d * std::cos(half));
    return {vftest::make_camera("a", a, Vec3(0, 0, 0), focal, 640, 480, Vec3(0, 1, 0)),
            vftest::make_camera("b", b, Vec3(0, 0, 0), focal, 640, 480, Vec3(0, 1, 0))};
}

} // namespace

TEST_CASE("uncertainty matches the Monte-Carlo oracle") {
    const double sigma_px = 0.5;
    for (double angle : {5.0, 10.0, 20.0, 45.0}) {
        CAPTURE(angle);
        auto cams = angle_pair(angle);
        auto est = point_uncertainty(cams, Vec3(0, 0, 0), sigma_px);
        double mc = vftest::monte_carlo_max_variance(cams, Vec3(0, 0, 0), sigma_px, 20000, 99);
        CHECK(est.u == doctest::Approx(mc).epsilon(0.10));
    }
}

TEST_CASE("uncertainty falls monotonically with angle") {
    double prev = std::numeric_limits<double>::infinity();
    for (double angle = 5.0; angle <= 90.0; angle += 5.0) {
        auto cams = angle_pair(angle);
        double u = point_uncertainty(cams, Vec3(0, 0, 0), 0.5).u;
        CHECK(u < prev);
        prev = u;
    }
}

TEST_CASE("uncertainty scales linearly with distance at fixed angle") {
    auto near_cams = angle_pair(15.0, 4.0);
    auto far_cams = angle_pair(15.0, 8.0);
    double u_near = point_uncertainty(near_cams, Vec3(0, 0, 0), 0.5).u;
    double u_far = point_uncertainty(far_cams, Vec3(0, 0, 0), 0.5).u;
    CHECK(std::sqrt(u_far / u_near) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("covariance is symmetric positive definite") {
    auto cams = angle_pair(25.0);
    auto est = point_uncertainty(cams, Vec3(0.1, -0.05, 0.02), 0.5);
    CHECK((est.covariance - est.covariance.transpose()).norm() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Mat3> es(est.covariance);
    CHECK(es.eigenvalues()(0) > 0.0);
    CHECK(est.u == doctest::Approx(es.eigenvalues()(2)));
}

TEST_CASE("singular and invalid configurations raise") {
    // identical centers: all rays collinear
    auto cam = vftest::make_camera("a", Vec3(0, 0, 5), Vec3(0, 0, 0), 800, 640, 480, Vec3(0, 1, 0));
    auto cam2 = cam;
    cam2.id = "b";
    CHECK_THROWS_AS(point_uncertainty({cam, cam2}, Vec3(0, 0, 0), 0.5), GeometryError);

    // point behind one camera
    auto cams = angle_pair(20.0);
    CHECK_THROWS_AS(point_uncertainty(cams, Vec3(0, 0, 20.0), 0.5), GeometryError);

    CHECK_THROWS_AS(point_uncertainty({cam}, Vec3(0, 0, 0), 0.5), GeometryError);
}

TEST_CASE("ground_resolution of a fronto-parallel square") {
    // unit square at distance 3, focal 300: expect (300/3)^2 px per m^2
    auto mesh = vftest::make_grid(1.0, 1.0, 1, 1);
    auto cam = vftest::make_camera("c", Vec3(0.5, 0.5, 3.0), Vec3(0.5, 0.5, 0), 300.0, 640, 480, Vec3(0, 1, 0));
    double r0 = ground_resolution(cam, mesh, 0);
    double r1 = ground_resolution(cam, mesh, 1);
    CHECK(r0 == doctest::Approx(100.0 * 100.0).epsilon(0.02));
    CHECK(r1 == doctest::Approx(100.0 * 100.0).epsilon(0.02));
}

TEST_CASE("ground_resolution halves at 60 degree slant") {
    // small slanted square far from the camera, perspective distortion small
    auto flat = vftest::make_grid(0.2, 0.2, 1, 1);
    TriangleMesh slanted = flat;
    double a = deg2rad(60.0);
    Vec3 pivot(0.1, 0.1, 0.0);
    for (auto& v : slanted.vertices) {
        Vec3 d = v - pivot;
        v = pivot + Vec3(d.x(), std::cos(a) * d.y(), std::sin(a) * d.y());
    }

    auto cam = vftest::make_camera("c", Vec3(0.1, 0.1, 10.0), pivot, 800.0, 640, 480, Vec3(0, 1, 0));
    double r_flat = ground_resolution(cam, flat, 0) + ground_resolution(cam, flat, 1);
    double r_slant = ground_resolution(cam, slanted, 0) + ground_resolution(cam, slanted, 1);
    CHECK(r_slant / r_flat == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("ground_resolution degenerate and invisible cases") {
    auto mesh = vftest::make_grid(1.0, 1.0, 1, 1);
    // back-facing: camera below the plane
    auto below = vftest::make_camera("c", Vec3(0.5, 0.5, -3.0), Vec3(0.5, 0.5, 0), 300.0, 640, 480, Vec3(0, 1, 0));
    CHECK(ground_resolution(below, mesh, 0) == 0.0);

    // vertex behind the camera plane
    auto side = vftest::make_camera("c", Vec3(0.5, 0.5, 0.0), Vec3(5.0, 0.5, 0.0), 300.0, 640, 480,
                                    Vec3(0, 0, 1));
    CHECK(ground_resolution(side, mesh, 0) == 0.0);

    TriangleMesh degen;
    degen.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
    degen.faces = {{0, 1, 2}};
    auto cam = vftest::make_camera("c", Vec3(0.5, 0.5, 3.0), Vec3(0.5, 0.5, 0), 300.0, 640, 480, Vec3(0, 1, 0));
    CHECK_THROWS_AS(ground_resolution(cam, degen, 0), GeometryError);
}
