#include "viewforge/geometry/closest_point.hpp"

#include <algorithm>
#include <cmath>

namespace viewforge {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, 5.1.5
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    Vec3 bp = p - b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

    Vec3 cp = p - c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    }

    double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

MeshDistanceQuery::MeshDistanceQuery(const TriangleMesh& mesh) : mesh_(mesh) {
    order_.resize(mesh.faces.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    if (!order_.empty()) build(0, static_cast<int>(order_.size()), 0);
}

int MeshDistanceQuery::build(int begin, int end, int depth) {
    Node node;
    node.begin = begin;
    node.end = end;
    for (int i = begin; i < end; ++i) {
        const auto& f = mesh_.faces[order_[i]];
        for (int k = 0; k < 3; ++k) node.box.extend(mesh_.vertices[f[k]]);
    }
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= 4 || depth > 40) return idx;

    Eigen::Index axis;
    node.box.size().maxCoeff(&axis);
    int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int fa, int fb) {
                         return mesh_.centroid(fa)[axis] < mesh_.centroid(fb)[axis];
                     });
    int left = build(begin, mid, depth + 1);
    int right = build(mid, end, depth + 1);
    nodes_[idx].left = left;
    nodes_[idx].right = right;
    return idx;
}

double MeshDistanceQuery::distance(const Vec3& p) const {
    int face;
    return distance(p, face);
}

double MeshDistanceQuery::distance(const Vec3& p, int& face) const {
    face = -1;
    if (nodes_.empty()) return std::numeric_limits<double>::infinity();

    double best = std::numeric_limits<double>::infinity();
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (node.box.distance_outside(p) >= best) continue;
        if (node.left < 0) {
            for (int i = node.begin; i < node.end; ++i) {
                const auto& f = mesh_.faces[order_[i]];
                Vec3 q = closest_point_on_triangle(p, mesh_.vertices[f[0]],
                                                   mesh_.vertices[f[1]], mesh_.vertices[f[2]]);
                double d = (q - p).norm();
                if (d < best) {
                    best = d;
                    face = order_[i];
                }
            }
        } else {
            // visit the nearer child first
            double dl = nodes_[node.left].box.distance_outside(p);
            double dr = nodes_[node.right].box.distance_outside(p);
            if (dl < dr) {
                stack[top++] = node.right;
                stack[top++] = node.left;
            } else {
                stack[top++] = node.left;
                stack[top++] = node.right;
            }
        }
    }
    return best;
}

} // namespace viewforge
