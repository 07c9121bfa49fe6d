#pragma once

#include <array>
#include <string>
#include <vector>

#include "viewforge/geometry/camera.hpp"
#include "viewforge/geometry/depthmap.hpp"
#include "viewforge/geometry/triplet.hpp"
#include "viewforge/labelgen/sampling.hpp"

namespace viewforge {

struct SupportConfig {
    double alpha_min_deg = 10.0;  // minimum view-angle difference (strict >)
    double s_min = 1.5;           // minimum resolution ratio (strict >)
    double positive_sigma = 1.0;  // consistency interval half-width, in sigma
};

struct SupportMetrics {
    double alpha_diff_deg = 0.0;
    double s_res = 1.0;
};

// View-angle difference and resolution ratio between a query and a reference
// triplet, evaluated at a 3D point: alpha_diff is the angle subtended by the
// two mean centers at the point; s_res = res_ref / res_query with
// res = mean_focal / |mean_center - point|.
SupportMetrics support_metrics(const TripletSummary& query, const TripletSummary& reference,
                               const Vec3& point);

// Per-pixel measurements of one image of a triplet reconstruction: depth,
// 3D point, 1-sigma uncertainty along the ray (sqrt of the max-eigenvalue
// uncertainty u), and the accumulated support count.
struct MeasurementGrid {
    std::string camera_id;
    int width = 0;
    int height = 0;
    int downscale = 1;
    std::vector<float> depth;    // +inf where invalid
    std::vector<float> sigma;    // sqrt(u); +inf where undefined
    std::vector<Vec3> point;
    std::vector<int> support;

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    bool valid(int x, int y) const {
        std::size_t i = index(x, y);
        return std::isfinite(depth[i]) && std::isfinite(sigma[i]);
    }
};

// Unprojects each valid depth pixel and attaches its triangulation
// uncertainty with respect to the full triplet. Pixels whose point falls
// behind any triplet camera (or yields singular geometry) become invalid.
MeasurementGrid make_measurement_grid(const Camera& camera, const DepthMap& dm,
                                      const std::array<Camera, 3>& triplet_cameras,
                                      double pixel_noise_std);

// One processed triplet: sample metadata, member cameras, summary, and the
// three measurement grids (one per member image).
struct TripletRecord {
    int index = 0;  // position in processing order; breaks merge ties
    TripletSample sample;
    std::array<Camera, 3> cameras;
    TripletSummary summary;
    std::array<MeasurementGrid, 3> grids;
};

// Fills the support counts of every grid of `query`. A reference cluster
// adds one support to a pixel when it is sufficiently different
// (alpha_diff > alpha_min or s_res > s_min) and holds a measurement within
// one sigma of the query point along the query ray. Reference triplets whose
// mean centers subtend less than alpha_min at the query point share a
// cluster and add at most one support together.
void compute_support(TripletRecord& query, const std::vector<const TripletRecord*>& references,
                     const SupportConfig& cfg);

} // namespace viewforge
