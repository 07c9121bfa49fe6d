#pragma once

#include <utility>
#include <vector>

#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

struct SubdivideResult {
    TriangleMesh mesh;
    std::vector<int> roi;  // face ids of the subdivided region in the new mesh
};

// Longest-edge midpoint subdivision of the roi faces until every roi edge is
// no longer than the average edge length of the roi before splitting.
// Non-roi faces are untouched; total roi area is preserved.
SubdivideResult subdivide_roi(const TriangleMesh& mesh, const std::vector<int>& roi);

struct ShrinkExpandResult {
    TriangleMesh shrunk;
    TriangleMesh expanded;
};

// Shrunk: three smoothing iterations, each moving a vertex half way to the
// average of its edge neighbors. Expanded: from the shrunk mesh, each vertex
// moves twice the (vertex + neighbors)-averaged total shrink motion, in the
// opposite direction. Connectivity and materials are preserved.
ShrinkExpandResult shrink_expand_mesh(const TriangleMesh& mesh);

} // namespace viewforge
