#include "viewforge/planner/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "viewforge/geometry/closest_point.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

constexpr float kInf = std::numeric_limits<float>::infinity();

// 1D squared-distance transform (lower envelope of parabolas). Reads n values
// from f with the given stride and writes n transformed values to the same
// locations.
void edt_1d(float* f, int n, int stride, std::vector<float>& scratch_d,
            std::vector<int>& scratch_v, std::vector<double>& scratch_z) {
    constexpr double kDInf = std::numeric_limits<double>::infinity();
    scratch_d.resize(n);
    scratch_v.resize(n);
    scratch_z.resize(n + 1);
    float* d = scratch_d.data();
    int* v = scratch_v.data();
    double* z = scratch_z.data();

    int k = 0;
    v[0] = 0;
    z[0] = -kDInf;
    z[1] = kDInf;
    auto fv = [&](int i) { return static_cast<double>(f[static_cast<std::size_t>(i) * stride]); };
    // intersection of the parabolas rooted at q and at v[k]; only v[0] can
    // hold an infinite source (infinite q is never added to the hull)
    auto intersect = [&](int q) {
        if (fv(v[k]) == kDInf) return -kDInf;  // q dominates everywhere
        return ((fv(q) + static_cast<double>(q) * q) -
                (fv(v[k]) + static_cast<double>(v[k]) * v[k])) /
               (2.0 * (q - v[k]));
    };
    for (int q = 1; q < n; ++q) {
        if (fv(q) == kDInf) continue;  // never wins against any finite source
        double s = intersect(q);
        while (k > 0 && s <= z[k]) {
            --k;
            s = intersect(q);
        }
        if (s == -kDInf) {
            // the only hull entry is an infinite source: replace it
            v[0] = q;
            z[1] = kDInf;
            continue;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kDInf;
    }

    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < static_cast<double>(q)) ++k;
        double base = fv(v[k]);
        d[q] = base == kDInf ? kInf
                             : static_cast<float>(static_cast<double>(q - v[k]) * (q - v[k]) + base);
    }
    for (int q = 0; q < n; ++q) f[static_cast<std::size_t>(q) * stride] = d[q];
}

} // namespace

double DistanceField::clearance_bound(const Vec3& p) const {
    if (empty()) return std::numeric_limits<double>::infinity();
    Vec3 g = (p - origin) / resolution;
    int ix = std::clamp(static_cast<int>(std::lround(g.x())), 0, nx - 1);
    int iy = std::clamp(static_cast<int>(std::lround(g.y())), 0, ny - 1);
    int iz = std::clamp(static_cast<int>(std::lround(g.z())), 0, nz - 1);
    double cell = at(ix, iy, iz);
    if (!std::isfinite(cell)) return std::numeric_limits<double>::infinity();
    double offset = (p - voxel_center(ix, iy, iz)).norm();
    return cell - offset - 0.5 * std::sqrt(3.0) * resolution;
}

DistanceField distance_field_from_occupancy(const std::vector<std::uint8_t>& occ, int nx, int ny,
                                            int nz, const Vec3& origin, double resolution) {
    if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("distance field: grid extents must be >= 1");
    if (resolution <= 0.0) throw ConfigError("distance field: resolution must be positive");
    std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
    if (occ.size() != n) throw ConfigError("distance field: occupancy size mismatch");

    DistanceField field;
    field.origin = origin;
    field.resolution = resolution;
    field.nx = nx;
    field.ny = ny;
    field.nz = nz;
    field.dist.assign(n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        if (occ[i]) field.dist[i] = 0.0f;
    }

    std::vector<float> sd;
    std::vector<int> sv;
    std::vector<double> sz;
    // squared distances in voxel units, one axis at a time
    for (int iz = 0; iz < nz; ++iz) {
        for (int iy = 0; iy < ny; ++iy) {
            edt_1d(&field.dist[field.index(0, iy, iz)], nx, 1, sd, sv, sz);
        }
    }
    for (int iz = 0; iz < nz; ++iz) {
        for (int ix = 0; ix < nx; ++ix) {
            edt_1d(&field.dist[field.index(ix, 0, iz)], ny, nx, sd, sv, sz);
        }
    }
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            edt_1d(&field.dist[field.index(ix, iy, 0)], nz, nx * ny, sd, sv, sz);
        }
    }

    const float res = static_cast<float>(resolution);
    for (float& d : field.dist) {
        if (d != kInf) d = std::sqrt(d) * res;
    }
    return field;
}

DistanceField build_distance_field(const TriangleMesh& mesh, double voxel_resolution,
                                   const Aabb& bounds) {
    if (voxel_resolution <= 0.0) throw ConfigError("distance field: resolution must be positive");
    if (bounds.empty()) throw ConfigError("distance field: empty bounds");

    Vec3 size = bounds.size();
    int nx = std::max(1, static_cast<int>(std::ceil(size.x() / voxel_resolution)));
    int ny = std::max(1, static_cast<int>(std::ceil(size.y() / voxel_resolution)));
    int nz = std::max(1, static_cast<int>(std::ceil(size.z() / voxel_resolution)));
    std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
    if (n > (std::size_t(1) << 26)) {
        throw ConfigError("distance field: voxel grid too large; increase voxel_resolution");
    }

    Vec3 origin = bounds.lo + Vec3::Constant(0.5 * voxel_resolution);
    std::vector<std::uint8_t> occ(n, 0);
    if (!mesh.faces.empty()) {
        MeshDistanceQuery query(mesh);
        const double circumradius = 0.5 * std::sqrt(3.0) * voxel_resolution;
        std::size_t i = 0;
        for (int iz = 0; iz < nz; ++iz) {
            for (int iy = 0; iy < ny; ++iy) {
                for (int ix = 0; ix < nx; ++ix, ++i) {
                    Vec3 c = origin + voxel_resolution * Vec3(ix, iy, iz);
                    if (query.distance(c) <= circumradius) occ[i] = 1;
                }
            }
        }
    }
    return distance_field_from_occupancy(occ, nx, ny, nz, origin, voxel_resolution);
}

DistanceField build_distance_field(const TriangleMesh& mesh, double voxel_resolution) {
    Aabb bounds = mesh.bounds();
    if (bounds.empty()) {
        // no geometry: a minimal all-free field
        bounds.extend(Vec3::Zero());
    }
    return build_distance_field(mesh, voxel_resolution, bounds.padded(voxel_resolution));
}

} // namespace viewforge
