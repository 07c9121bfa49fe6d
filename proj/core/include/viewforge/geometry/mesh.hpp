#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "viewforge/types.hpp"

namespace viewforge {

// Indexed triangle mesh with an optional per-face material id.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::int32_t> materials;  // empty or one entry per face

    bool has_materials() const { return !materials.empty(); }

    Vec3 centroid(int f) const {
        const auto& t = faces[f];
        return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
    }

    // Unnormalized face normal (cross product of edge vectors).
    Vec3 raw_normal(int f) const {
        const auto& t = faces[f];
        return (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]);
    }

    Vec3 normal(int f) const {
        Vec3 n = raw_normal(f);
        double l = n.norm();
        return l > 0.0 ? Vec3(n / l) : Vec3(0, 0, 1);
    }

    double area(int f) const { return 0.5 * raw_normal(f).norm(); }

    double total_area() const {
        double a = 0.0;
        for (std::size_t f = 0; f < faces.size(); ++f) a += area(static_cast<int>(f));
        return a;
    }

    Aabb bounds() const {
        Aabb b;
        for (const auto& v : vertices) b.extend(v);
        return b;
    }

    // Edge-sharing vertex adjacency.
    std::vector<std::vector<int>> vertex_neighbors() const;
};

} // namespace viewforge
