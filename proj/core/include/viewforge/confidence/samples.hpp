#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewforge/image.hpp"
#include "viewforge/labelgen/voting.hpp"

namespace viewforge {

// Half width of the square color patch a split test may read from.
inline constexpr int kPatchRadius = 13;  // 27x27 patch

// One training patch, stored as a view into a SampleSet image: center pixel,
// class label, and the triangulation angle the measurement was attempted at.
struct PatchSample {
    int image = 0;  // index into SampleSet::images
    int x = 0;
    int y = 0;
    int label = 0;  // 1 = positive, 0 = negative
    float angle_deg = 0.0f;
};

struct SampleSet {
    std::vector<ImageLab> images;
    std::vector<PatchSample> samples;
};

// Collects labeled pixels whose full patch lies inside the image, balanced to
// at most per_class_cap samples per class (seeded subsampling), and converts
// the images to Lab. Images and labels are aligned by position and must agree
// on id and size. Throws when either class has no samples at all.
SampleSet extract_samples(const std::vector<ImageRgb8>& images,
                          const std::vector<LabelImage>& labels, int per_class_cap,
                          std::uint64_t seed);

} // namespace viewforge
