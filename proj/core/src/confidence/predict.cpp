#include "viewforge/confidence/predict.hpp"

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

void require_restructured(const ConfidenceForest& forest) {
    if (forest.trees.empty()) throw ConfigError("confidence: forest has no trees");
    if (forest.bins < 1) {
        throw ConfigError("confidence: forest has no angular bins; restructure it first");
    }
}

} // namespace

std::vector<float> predict_pixel(const ConfidenceForest& forest, const ImageLab& image, int x,
                                 int y) {
    require_restructured(forest);
    std::vector<float> acc(forest.bins, 0.0f);
    for (const Tree& tree : forest.trees) {
        const TreeLeaf& leaf = tree.leaf_for(image, x, y);
        for (int b = 0; b < forest.bins; ++b) acc[b] += leaf.bins[b].confidence;
    }
    float inv = 1.0f / static_cast<float>(forest.trees.size());
    for (float& v : acc) v *= inv;
    return acc;
}

ConfidenceImage predict_grid(const ConfidenceForest& forest, const ImageLab& image, int step) {
    require_restructured(forest);
    if (step < 1) throw ConfigError("predict_grid: step must be >= 1");

    ConfidenceImage ci;
    ci.image_id = image.id;
    ci.width = image.width;
    ci.height = image.height;
    ci.step = step;
    ci.bins = forest.bins;
    ci.gamma_max = forest.gamma_max;
    ci.grid_w = (image.width + step - 1) / step;
    ci.grid_h = (image.height + step - 1) / step;
    ci.data.resize(static_cast<std::size_t>(ci.grid_w) * ci.grid_h * ci.bins);

    for (int gy = 0; gy < ci.grid_h; ++gy) {
        int y = std::min(gy * step, image.height - 1);
        for (int gx = 0; gx < ci.grid_w; ++gx) {
            int x = std::min(gx * step, image.width - 1);
            std::vector<float> conf = predict_pixel(forest, image, x, y);
            std::copy(conf.begin(), conf.end(), ci.data.begin() + ci.node_index(gx, gy));
        }
    }
    return ci;
}

std::vector<CurvePoint> confidence_curve(const ConfidenceForest& forest, const ImageLab& image,
                                         int x, int y) {
    require_restructured(forest);
    if (x < 0 || x >= image.width || y < 0 || y >= image.height) {
        throw ConfigError("confidence_curve: pixel out of bounds");
    }
    std::vector<CurvePoint> curve(forest.bins);
    for (const Tree& tree : forest.trees) {
        const TreeLeaf& leaf = tree.leaf_for(image, x, y);
        std::size_t total = 0;
        for (const BinStats& bin : leaf.bins) total += bin.pos + bin.neg;
        for (int b = 0; b < forest.bins; ++b) {
            curve[b].confidence += leaf.bins[b].confidence;
            if (total > 0) {
                curve[b].mass += static_cast<double>(leaf.bins[b].pos + leaf.bins[b].neg) / total;
            }
        }
    }
    for (CurvePoint& p : curve) {
        p.confidence /= static_cast<double>(forest.trees.size());
        p.mass /= static_cast<double>(forest.trees.size());
        p.valid = p.mass >= 0.01;
    }
    return curve;
}

} // namespace viewforge
