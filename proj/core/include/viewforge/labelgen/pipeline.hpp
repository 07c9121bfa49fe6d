#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "viewforge/labelgen/missing.hpp"
#include "viewforge/labelgen/sampling.hpp"
#include "viewforge/labelgen/support.hpp"
#include "viewforge/labelgen/voting.hpp"

namespace viewforge {

// Dense reconstruction backend run once per camera triplet. Returns false if
// the triplet cannot be processed (it is skipped and logged).
class MvsBackend {
public:
    virtual ~MvsBackend() = default;
    virtual std::string name() const = 0;
    virtual bool run(const std::array<Camera, 3>& cameras, std::array<DepthMap, 3>& out) = 0;
};

struct LabelGenConfig {
    TripletSamplingConfig sampling;
    SupportConfig support;
    VotingConfig voting;
    AugmentConfig augment;
    double pixel_noise_std = 1.0;
    double gt_tolerance_sigma = 3.0;  // accuracy: |depth - gt| <= this * sigma
    std::uint64_t seed = 1;
};

struct LabelGenReport {
    int triplets_sampled = 0;
    int triplets_processed = 0;
    int triplets_failed = 0;
    double label_density = 0.0;
    double labeling_accuracy = -1.0;  // -1 when no ground truth given
    std::vector<std::pair<std::string, double>> per_image_density;
    std::vector<std::string> warnings;
};

// Full self-supervised labeling pipeline: sample triplets, run the backend,
// compute support, vote, detect missing regions, and merge everything into
// one label image per camera (later triplets overwrite earlier ones on
// conflict). `ground_truth` maps camera ids to reference depthmaps and
// enables the accuracy figure in the report.
std::vector<LabelImage> generate_labels(const std::vector<Camera>& cameras,
                                        const TriangleMesh& mesh, MvsBackend& backend,
                                        const LabelGenConfig& cfg,
                                        const std::map<std::string, DepthMap>* ground_truth = nullptr,
                                        LabelGenReport* report = nullptr);

} // namespace viewforge
