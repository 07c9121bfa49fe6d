#include "viewforge/geometry/mesh.hpp"

#include <algorithm>

namespace viewforge {

std::vector<std::vector<int>> TriangleMesh::vertex_neighbors() const {
    std::vector<std::vector<int>> nb(vertices.size());
    auto add = [&nb](int a, int b) {
        auto& v = nb[a];
        if (std::find(v.begin(), v.end(), b) == v.end()) v.push_back(b);
    };
    for (const auto& f : faces) {
        add(f[0], f[1]); add(f[1], f[0]);
        add(f[1], f[2]); add(f[2], f[1]);
        add(f[2], f[0]); add(f[0], f[2]);
    }
    return nb;
}

} // namespace viewforge
