#include "viewforge/confidence/samples.hpp"

#include "viewforge/util/error.hpp"
#include "viewforge/util/rng.hpp"

namespace viewforge {

SampleSet extract_samples(const std::vector<ImageRgb8>& images,
                          const std::vector<LabelImage>& labels, int per_class_cap,
                          std::uint64_t seed) {
    if (images.size() != labels.size()) {
        throw ConfigError("extract_samples: image and label counts differ");
    }
    if (per_class_cap < 1) throw ConfigError("extract_samples: per_class_cap must be >= 1");

    SampleSet set;
    std::vector<PatchSample> pos, neg;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const ImageRgb8& im = images[i];
        const LabelImage& lab = labels[i];
        if (im.id != lab.image_id) {
            throw ConfigError("extract_samples: image/label id mismatch at index " +
                              std::to_string(i) + " (" + im.id + " vs " + lab.image_id + ")");
        }
        if (im.width != lab.width || im.height != lab.height) {
            throw ConfigError("extract_samples: image/label size mismatch for " + im.id);
        }
        set.images.push_back(rgb_to_lab(im));
        int img = static_cast<int>(set.images.size()) - 1;
        for (int y = kPatchRadius; y < im.height - kPatchRadius; ++y) {
            for (int x = kPatchRadius; x < im.width - kPatchRadius; ++x) {
                std::uint8_t l = lab.labels[static_cast<std::size_t>(y) * lab.width + x];
                if (l == LabelImage::kUnlabeled) continue;
                PatchSample s;
                s.image = img;
                s.x = x;
                s.y = y;
                s.label = l == LabelImage::kPositive ? 1 : 0;
                s.angle_deg = lab.angle_deg[static_cast<std::size_t>(y) * lab.width + x];
                (s.label ? pos : neg).push_back(s);
            }
        }
    }
    if (pos.empty()) throw ConfigError("extract_samples: no positive samples");
    if (neg.empty()) throw ConfigError("extract_samples: no negative samples");

    Rng rng(seed);
    auto take = [&](std::vector<PatchSample>& cls) {
        rng.shuffle(cls);
        if (static_cast<int>(cls.size()) > per_class_cap) cls.resize(per_class_cap);
    };
    take(pos);
    take(neg);
    set.samples = std::move(pos);
    set.samples.insert(set.samples.end(), neg.begin(), neg.end());
    rng.shuffle(set.samples);
    return set;
}

} // namespace viewforge
