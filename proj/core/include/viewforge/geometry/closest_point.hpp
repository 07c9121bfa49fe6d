#pragma once

#include <vector>

#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

// Exact point-to-triangle closest point.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Median-split AABB tree over mesh faces for exact unsigned point-to-surface
// distance queries.
class MeshDistanceQuery {
  public:
    explicit MeshDistanceQuery(const TriangleMesh& mesh);

    double distance(const Vec3& p) const;
    // Distance plus the face realizing it (-1 for an empty mesh).
    double distance(const Vec3& p, int& face) const;

  private:
    struct Node {
        Aabb box;
        int left = -1;    // child index, or -1 for leaves
        int right = -1;
        int begin = 0;    // leaf face range in order_
        int end = 0;
    };

    int build(int begin, int end, int depth);

    const TriangleMesh& mesh_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
};

} // namespace viewforge
