#include "viewforge/geometry/mesh_ops.hpp"

#include <algorithm>
#include <deque>

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

int longest_edge(const TriangleMesh& m, int f, double& len) {
    const auto& t = m.faces[f];
    int best = 0;
    len = -1.0;
    for (int e = 0; e < 3; ++e) {
        double l = (m.vertices[t[(e + 1) % 3]] - m.vertices[t[e]]).norm();
        if (l > len) {
            len = l;
            best = e;
        }
    }
    return best;
}

} // namespace

SubdivideResult subdivide_roi(const TriangleMesh& mesh, const std::vector<int>& roi) {
    if (roi.empty()) throw ConfigError("subdivide_roi: empty roi");
    for (int f : roi) {
        if (f < 0 || f >= static_cast<int>(mesh.faces.size())) {
            throw ConfigError("subdivide_roi: roi face id out of range");
        }
    }

    SubdivideResult out;
    out.mesh = mesh;
    TriangleMesh& m = out.mesh;

    double edge_sum = 0.0;
    for (int f : roi) {
        const auto& t = mesh.faces[f];
        for (int e = 0; e < 3; ++e) {
            edge_sum += (mesh.vertices[t[(e + 1) % 3]] - mesh.vertices[t[e]]).norm();
        }
    }
    const double bound = edge_sum / (3.0 * roi.size()) + 1e-12;

    std::deque<int> queue(roi.begin(), roi.end());
    std::vector<int> done;
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        double len;
        int e = longest_edge(m, f, len);
        if (len <= bound) {
            done.push_back(f);
            continue;
        }
        auto tri = m.faces[f];
        int a = tri[e];
        int b = tri[(e + 1) % 3];
        int c = tri[(e + 2) % 3];
        int mid = static_cast<int>(m.vertices.size());
        m.vertices.push_back(0.5 * (m.vertices[a] + m.vertices[b]));

        m.faces[f] = {a, mid, c};
        m.faces.push_back({mid, b, c});
        if (m.has_materials()) m.materials.push_back(m.materials[f]);
        queue.push_front(static_cast<int>(m.faces.size()) - 1);
        queue.push_front(f);
    }

    std::sort(done.begin(), done.end());
    out.roi = std::move(done);
    return out;
}

ShrinkExpandResult shrink_expand_mesh(const TriangleMesh& mesh) {
    auto neighbors = mesh.vertex_neighbors();
    const std::size_t n = mesh.vertices.size();

    ShrinkExpandResult out;
    out.shrunk = mesh;
    auto& sv = out.shrunk.vertices;
    for (int iter = 0; iter < 3; ++iter) {
        std::vector<Vec3> next = sv;
        for (std::size_t i = 0; i < n; ++i) {
            if (neighbors[i].empty()) continue;
            Vec3 avg = Vec3::Zero();
            for (int j : neighbors[i]) avg += sv[j];
            avg /= static_cast<double>(neighbors[i].size());
            next[i] = sv[i] + 0.5 * (avg - sv[i]);
        }
        sv = std::move(next);
    }

    // total shrink motion per vertex, then neighborhood-averaged reversal
    std::vector<Vec3> motion(n);
    for (std::size_t i = 0; i < n; ++i) motion[i] = sv[i] - mesh.vertices[i];

    out.expanded = out.shrunk;
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 avg = motion[i];
        for (int j : neighbors[i]) avg += motion[j];
        avg /= static_cast<double>(neighbors[i].size() + 1);
        out.expanded.vertices[i] = sv[i] - 2.0 * avg;
    }
    return out;
}

} // namespace viewforge
