#pragma once

#include <cstdint>
#include <vector>

#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

// Dense voxel grid holding, per voxel, the exact Euclidean distance (meters,
// center to center) to the nearest occupied voxel. Occupied voxels hold 0;
// a field built from an empty mesh holds +inf everywhere. The stored values
// are 1-Lipschitz with respect to voxel center distance.
struct DistanceField {
    Vec3 origin = Vec3::Zero();  // center of voxel (0, 0, 0)
    double resolution = 0.0;     // voxel edge, m
    int nx = 0, ny = 0, nz = 0;
    std::vector<float> dist;

    bool empty() const { return dist.empty(); }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * ny + iy) * nx + ix;
    }
    float at(int ix, int iy, int iz) const { return dist[index(ix, iy, iz)]; }

    Vec3 voxel_center(int ix, int iy, int iz) const {
        return origin + resolution * Vec3(ix, iy, iz);
    }

    // Conservative lower bound on the distance from an arbitrary point to the
    // voxelized surface: nearest-voxel field value minus the point-to-center
    // offset minus the voxel circumradius. Can be negative near obstacles;
    // +inf when the field is unoccupied.
    double clearance_bound(const Vec3& p) const;
};

// Exact squared-Euclidean distance transform of an occupancy grid (occ != 0
// marks occupied), distances scaled by `resolution` meters per voxel.
DistanceField distance_field_from_occupancy(const std::vector<std::uint8_t>& occ, int nx, int ny,
                                            int nz, const Vec3& origin, double resolution);

// Voxelizes the mesh over `bounds` (a voxel is occupied when its center lies
// within the voxel circumradius of the surface, a superset of all voxels the
// surface intersects) and runs the distance transform.
DistanceField build_distance_field(const TriangleMesh& mesh, double voxel_resolution,
                                   const Aabb& bounds);

// Same, over the mesh bounds padded by one voxel.
DistanceField build_distance_field(const TriangleMesh& mesh, double voxel_resolution);

} // namespace viewforge
