#include <doctest.h>

#include "support/builders.hpp"
#include "support/raycast.hpp"
#include "viewforge/geometry/render.hpp"
#include "viewforge/geometry/visibility.hpp"

using namespace viewforge;

TEST_CASE("render_depth of a plane seen from above") {
    auto mesh = vftest::make_grid(2.0, 2.0, 4, 4);
    auto cam = vftest::make_camera("c", Vec3(1, 1, 3), Vec3(1, 1, 0), 150.0, 160, 120, Vec3(0, 1, 0));
    auto rr = render_depth(cam, mesh);
    CHECK(rr.depth.width == 160);
    CHECK(rr.depth.height == 120);

    int cx = 80, cy = 60;
    REQUIRE(rr.depth.valid(cx, cy));
    CHECK(rr.depth.at(cx, cy) == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(rr.face_at(cx, cy) >= 0);

    auto rr2 = render_depth(cam, mesh, 2);
    CHECK(rr2.depth.width == 80);
    CHECK(rr2.depth.height == 60);
    CHECK(rr2.depth.downscale == 2);
    REQUIRE(rr2.depth.valid(40, 30));
    CHECK(rr2.depth.at(40, 30) == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("empty mesh renders all-invalid") {
    TriangleMesh empty;
    auto cam = vftest::make_camera("c", Vec3(0, 0, 3), Vec3(0, 0, 0), 200.0, 160, 120, Vec3(0, 1, 0));
    auto rr = render_depth(cam, empty);
    CHECK(rr.depth.valid_count() == 0);
    for (auto f : rr.face_ids) CHECK(f == -1);
}

namespace {

bool edge_pixel(const RenderResult& rr, int x, int y) {
    int id = rr.face_at(x, y);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= rr.depth.width || ny >= rr.depth.height) continue;
            if (rr.face_at(nx, ny) != id) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("rasterizer agrees with the ray-cast oracle") {
    Rng rng(11);
    std::size_t checked = 0, mismatched = 0;
    for (int scene = 0; scene < 5; ++scene) {
        auto mesh = vftest::random_mesh(rng, 60);
        Vec3 eye(rng.uniform(2.5, 3.5), rng.uniform(-1, 1), rng.uniform(1.5, 3.0));
        auto cam = vftest::make_camera("c", eye, Vec3(0, 0, 0), 180.0, 160, 120);
        auto rr = render_depth(cam, mesh);
        for (int y = 0; y < rr.depth.height; ++y) {
            for (int x = 0; x < rr.depth.width; ++x) {
                int oracle_face;
                double od = vftest::raycast_depth(cam, mesh, x, y, 1, &oracle_face);
                int rf = rr.face_at(x, y);
                bool agree;
                if (oracle_face < 0 || rf < 0) {
                    agree = oracle_face == rf;
                } else if (oracle_face == rf) {
                    agree = std::abs(rr.depth.at(x, y) - od) <= 1e-5 * od;
                } else {
                    agree = false;
                }
                if (agree) {
                    ++checked;
                } else if (!edge_pixel(rr, x, y)) {
                    ++checked;
                    ++mismatched;
                }
                // edge-adjacent disagreements are exempt
            }
        }
    }
    CAPTURE(mismatched);
    CAPTURE(checked);
    CHECK(static_cast<double>(mismatched) <= 0.001 * static_cast<double>(checked));
}

TEST_CASE("occluded geometry loses the z-test") {
    // two parallel quads, camera sees only the nearer one in the middle
    auto far_quad = vftest::make_grid(2.0, 2.0, 1, 1, 0.0);
    TriangleMesh mesh = far_quad;
    auto near_quad = vftest::make_grid(0.6, 0.6, 1, 1, 1.0);
    int base = static_cast<int>(mesh.vertices.size());
    for (auto& v : near_quad.vertices) mesh.vertices.push_back(v + Vec3(0.7, 0.7, 0));
    for (auto f : near_quad.faces) {
        mesh.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    }

    auto cam = vftest::make_camera("c", Vec3(1, 1, 3), Vec3(1, 1, 0), 150.0, 160, 120, Vec3(0, 1, 0));
    auto rr = render_depth(cam, mesh);
    REQUIRE(rr.depth.valid(80, 60));
    CHECK(rr.depth.at(80, 60) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(rr.face_at(80, 60) >= 2);  // one of the near faces
}
