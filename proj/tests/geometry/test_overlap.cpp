#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support/builders.hpp"
#include "support/raycast.hpp"
#include "viewforge/geometry/visibility.hpp"

using namespace viewforge;

namespace {

// Independent re-statement of the centroid visibility rule, with the z-buffer
// replaced by a brute-force ray cast through the same rounded pixel.
bool oracle_visible(const TriangleMesh& mesh, int t, const Camera& cam, int downscale) {
    Vec3 c = mesh.centroid(t);
    if (mesh.raw_normal(t).dot(cam.pose.C - c) <= 0.0) return false;
    auto proj = project_point(cam, c);
    if (!proj || !pixel_in_bounds(cam.intr, proj->px)) return false;

    auto scaled = cam.intr.scaled(downscale);
    int x = std::min(std::max(static_cast<int>(std::lround(proj->px.x() / downscale)), 0),
                     scaled.width - 1);
    int y = std::min(std::max(static_cast<int>(std::lround(proj->px.y() / downscale)), 0),
                     scaled.height - 1);
    int face = -1;
    double d = vftest::raycast_depth(cam, mesh, x, y, downscale, &face);
    if (face == t) return true;
    return std::isfinite(d) && std::abs(d - proj->depth) <= kDepthTolerance * proj->depth;
}

std::vector<int> all_faces(const TriangleMesh& m) {
    std::vector<int> ids(m.faces.size());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

} // namespace

TEST_CASE("visibility with overhead occluder") {
    // Ground grid on [0,2]^2 with a half-covering canopy at z = 1.
    auto scene = vftest::make_grid(2.0, 2.0, 4, 4);
    int n_ground = static_cast<int>(scene.faces.size());
    auto canopy = vftest::make_grid(1.0, 2.0, 1, 1, 1.0);
    int base = static_cast<int>(scene.vertices.size());
    for (const auto& v : canopy.vertices) scene.vertices.push_back(v);
    for (auto f : canopy.faces) {
        scene.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    }

    auto cam = vftest::make_camera("top", Vec3(1, 1, 3), Vec3(1, 1, 0), 200.0, 160, 120,
                                   Vec3(0, 1, 0));
    auto table = compute_visibility(scene, all_faces(scene), {cam});

    for (int t = 0; t < static_cast<int>(scene.faces.size()); ++t) {
        bool expect;
        if (t >= n_ground) {
            expect = true;  // canopy faces are unobstructed
        } else {
            // Ray from (1,1,3) to a ground point crosses z=1 inside the canopy
            // footprint x in [0,1] exactly when the ground x is left of center.
            expect = scene.centroid(t).x() > 1.0;
        }
        CHECK_MESSAGE(table.visible(t, 0) == expect, "face ", t);
    }
}

TEST_CASE("visibility matches ray-cast oracle on random scenes") {
    Rng rng(4242);
    int mismatches = 0;
    int total = 0;
    for (int scene_i = 0; scene_i < 3; ++scene_i) {
        auto mesh = vftest::random_mesh(rng, 40);
        std::vector<Camera> cams;
        for (int ci = 0; ci < 3; ++ci) {
            double th = rng.uniform(0.0, 2.0 * M_PI);
            Vec3 c(4.0 * std::cos(th), 4.0 * std::sin(th), rng.uniform(1.0, 3.0));
            cams.push_back(vftest::make_camera("c" + std::to_string(ci), c, Vec3(0, 0, 0)));
        }
        auto table = compute_visibility(mesh, all_faces(mesh), cams, 1);
        for (int t = 0; t < static_cast<int>(mesh.faces.size()); ++t) {
            for (int ci = 0; ci < static_cast<int>(cams.size()); ++ci) {
                ++total;
                if (table.visible(t, ci) != oracle_visible(mesh, t, cams[ci], 1)) ++mismatches;
            }
        }
    }
    // Raster vs ray-cast can disagree on pixels that straddle a face edge;
    // anything beyond a sliver of pairs means a real visibility bug.
    CHECK(total == 360);
    CHECK(mismatches <= total / 100);
}

TEST_CASE("image_overlap identity and disjoint views") {
    auto mesh = vftest::make_grid(20.0, 20.0, 4, 4);
    auto down = vftest::make_camera("down", Vec3(10, 10, 5), Vec3(10, 10, 0), 200.0, 160, 120,
                                    Vec3(0, 1, 0));
    CHECK(image_overlap(down, down, mesh) == doctest::Approx(1.0));

    auto up = vftest::make_camera("up", Vec3(10, 10, 5), Vec3(10, 10, 10), 200.0, 160, 120,
                                  Vec3(0, 1, 0));
    CHECK(image_overlap(down, up, mesh) == doctest::Approx(0.0));
    // a camera that sees nothing has no overlap with anyone
    CHECK(image_overlap(up, down, mesh) == doctest::Approx(0.0));
}

TEST_CASE("image_overlap half-shifted camera") {
    auto mesh = vftest::make_grid(20.0, 20.0, 4, 4);
    auto a = vftest::make_camera("a", Vec3(10, 10, 5), Vec3(10, 10, 0), 200.0, 160, 120,
                                 Vec3(0, 1, 0));
    // footprint half-width on the plane: z * ((w-1)/2) / f
    double half = 5.0 * 79.5 / 200.0;
    auto b = vftest::make_camera("b", Vec3(10 + half, 10, 5), Vec3(10 + half, 10, 0), 200.0, 160,
                                 120, Vec3(0, 1, 0));
    CHECK(image_overlap(a, b, mesh) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("overlap render scale tracks resolution") {
    CameraIntrinsics small;
    small.width = 160;
    small.height = 120;
    CHECK(overlap_render_downscale(small) == 1);
    CameraIntrinsics big;
    big.width = 1920;
    big.height = 1080;
    CHECK(overlap_render_downscale(big) == 11);
}
