#include <benchmark/benchmark.h>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/render.hpp"
#include "viewforge/geometry/visibility.hpp"
#include "viewforge/util/rng.hpp"

namespace {

using namespace viewforge;

TriangleMesh bumpy_ground(int n, double size) {
    TriangleMesh m;
    Rng rng(7);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            m.vertices.emplace_back(size * i / n, size * j / n, 0.05 * rng.uniform(-1.0, 1.0));
        }
    }
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            m.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            m.faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    return m;
}

Camera overhead_camera(double size) {
    Camera cam;
    cam.id = "bench";
    cam.intr.focal = 200.0;
    cam.intr.width = 160;
    cam.intr.height = 120;
    cam.intr.pp = Vec2(79.5, 59.5);
    cam.pose.C = Vec3(size / 2, size / 2, 1.5 * size);
    cam.pose.R = look_at(cam.pose.C, Vec3(size / 2, size / 2, 0.0), Vec3(0, 1, 0));
    return cam;
}

void BM_RenderDepth(benchmark::State& state) {
    auto mesh = bumpy_ground(static_cast<int>(state.range(0)), 4.0);
    auto cam = overhead_camera(4.0);
    for (auto _ : state) {
        auto r = render_depth(cam, mesh, 1);
        benchmark::DoNotOptimize(r.depth.depths.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(mesh.faces.size()));
}
BENCHMARK(BM_RenderDepth)->Arg(16)->Arg(48);

void BM_ImageOverlap(benchmark::State& state) {
    auto mesh = bumpy_ground(24, 4.0);
    auto a = overhead_camera(4.0);
    auto b = a;
    b.pose.C.x() += 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(image_overlap(a, b, mesh));
    }
}
BENCHMARK(BM_ImageOverlap);

} // namespace

BENCHMARK_MAIN();
