#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "viewforge/confidence/predict.hpp"
#include "viewforge/geometry/visibility.hpp"
#include "viewforge/planner/config.hpp"

namespace viewforge {

// Per-triangle quality score. The factors belong to the best camera triplet
// found for the triangle: f = (alpha*f_res + (1-alpha)*f_unc) * f_cov * f_conf.
// A triangle seen by fewer than min_cameras cameras has f_cov = 0, f = 0 and
// keeps the prior confidence 0.5.
struct FulfillmentRecord {
    int face = -1;
    double f_cov = 0.0;
    double f_res = 0.0;
    double f_unc = 0.0;
    double f_conf = 0.5;
    double f = 0.0;
    std::array<std::string, 3> best_triplet{};  // camera ids; empty when f_cov = 0
};

// Confidence images addressable by image id.
class ConfidenceLookup {
  public:
    ConfidenceLookup() = default;
    explicit ConfidenceLookup(const std::vector<ConfidenceImage>& images);
    const ConfidenceImage* find(const std::string& image_id) const;
    bool empty() const { return by_id_.empty(); }

  private:
    std::unordered_map<std::string, const ConfidenceImage*> by_id_;
};

// The three per-triplet quality factors of one triangle, coverage excluded
// (callers establish visibility before evaluating).
struct TripletFactors {
    double f_res = 0.0;
    double f_unc = 0.0;
    double f_conf = 0.5;
    double f = 0.0;  // (alpha*f_res + (1-alpha)*f_unc) * f_conf
};

// Smallest pairwise triangulation angle (degrees) spanned by three camera
// centers at a point.
double min_pairwise_angle(const std::array<const Camera*, 3>& cams, const Vec3& point);

// Confidence of `viewer`'s image at the projection of `point`, in the bin of
// `angle_deg`. Falls back to the 0.5 prior when the viewer has no confidence
// image or does not face the point.
double confidence_at(const ConfidenceLookup& conf, const Camera& viewer, const Vec3& point,
                     double angle_deg);

// Resolution, uncertainty and combined quality of one triangle under one
// camera triplet. The confidence source is the triplet member nearest the
// centroid that has a confidence image (0.5 prior when none has one), read at
// the triplet's minimum pairwise triangulation angle at the centroid.
TripletFactors evaluate_triplet(const TriangleMesh& mesh, int face,
                                const std::array<const Camera*, 3>& cams,
                                const ConfidenceLookup& conf, const PlannerConfig& cfg);

// Same factors with the confidence value supplied by the caller (used when
// the triplet is hypothetical and the confidence comes from a captured image
// rather than a triplet member).
TripletFactors evaluate_triplet_with_confidence(const TriangleMesh& mesh, int face,
                                                const std::array<const Camera*, 3>& cams,
                                                double f_conf, const PlannerConfig& cfg);

struct FulfillmentResult {
    std::vector<FulfillmentRecord> records;  // one per selected triangle
    std::vector<int> faces;                  // selected faces, record order
    VisibilityTable visibility;              // faces x captured cameras
    std::vector<std::string> warnings;
};

// Scores min(n_triangles, |roi|) randomly selected roi triangles against the
// captured cameras: visibility by rendering, then the best triplet over all
// 3-subsets of the cameras seeing each triangle (capped at max_view_cameras
// nearest). Throws ConfigError on an empty roi.
FulfillmentResult estimate_fulfillment(const std::vector<Camera>& captured,
                                       const TriangleMesh& mesh, const std::vector<int>& roi,
                                       const std::vector<ConfidenceImage>& confidences,
                                       const PlannerConfig& cfg, std::uint64_t seed);

struct TargetSelection {
    std::vector<int> record_indices;  // into the FulfillmentResult record array
    std::vector<std::string> warnings;
};

// Draws up to n_targets records without replacement from the distribution
// with weight w(t) = 1 - f(t)/f_conf(t) (w = 0 when f_conf = 0). Falls back
// to uniform selection with a warning when every weight is zero; stops early
// (with a warning) when the positive weights are exhausted.
TargetSelection select_targets(const std::vector<FulfillmentRecord>& records, int n_targets,
                               std::uint64_t seed);

} // namespace viewforge
