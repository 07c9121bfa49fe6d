#pragma once

#include <string>
#include <vector>

#include "viewforge/confidence/forest.hpp"

namespace viewforge {

// b-channel confidence sampled on a regular pixel grid. Lookups snap to the
// nearest grid node, so step = 1 is exact per-pixel prediction.
struct ConfidenceImage {
    std::string image_id;
    int width = 0;   // full-resolution extent the grid covers
    int height = 0;
    int step = 1;    // pixels between grid nodes
    int bins = 0;
    double gamma_max = 0.0;
    int grid_w = 0;
    int grid_h = 0;
    std::vector<float> data;  // grid_h x grid_w x bins, bin fastest

    std::size_t node_index(int gx, int gy) const {
        return (static_cast<std::size_t>(gy) * grid_w + gx) * bins;
    }

    // nearest grid node for a full-resolution pixel
    float at(int x, int y, int bin) const {
        int gx = std::clamp(static_cast<int>(std::lround(static_cast<double>(x) / step)), 0,
                            grid_w - 1);
        int gy = std::clamp(static_cast<int>(std::lround(static_cast<double>(y) / step)), 0,
                            grid_h - 1);
        return data[node_index(gx, gy) + bin];
    }

    // bin of a triangulation angle under this image's binning
    int bin_of(double angle_deg) const { return angle_bin_index(angle_deg, bins, gamma_max); }
};

// Per-bin confidence at one pixel, averaged over the trees.
std::vector<float> predict_pixel(const ConfidenceForest& forest, const ImageLab& image, int x,
                                 int y);

// Evaluates the forest at every step-th pixel (grid node (gx, gy) reads pixel
// (gx*step, gy*step), clamped to the image).
ConfidenceImage predict_grid(const ConfidenceForest& forest, const ImageLab& image, int step);

// One angular-bin point of a confidence-vs-angle curve: tree-averaged
// confidence plus the share of training mass the bin holds in the visited
// leaves. Bins under 1% mass are flagged invalid (the curve stops there).
struct CurvePoint {
    double confidence = 0.0;
    double mass = 0.0;
    bool valid = false;
};

std::vector<CurvePoint> confidence_curve(const ConfidenceForest& forest, const ImageLab& image,
                                         int x, int y);

} // namespace viewforge
