#pragma once

#include <array>
#include <string>

#include "viewforge/geometry/camera.hpp"

namespace viewforge {

// Aggregate view of a camera triplet: arithmetic mean of the three centers
// and of the three focal lengths, used by the support metrics.
struct TripletSummary {
    Vec3 mean_center = Vec3::Zero();
    double mean_focal = 0.0;
    std::array<std::string, 3> camera_ids;
};

inline TripletSummary make_triplet_summary(const std::array<Camera, 3>& cams) {
    TripletSummary s;
    for (int i = 0; i < 3; ++i) {
        s.mean_center += cams[i].pose.C;
        s.mean_focal += cams[i].intr.focal;
        s.camera_ids[i] = cams[i].id;
    }
    s.mean_center /= 3.0;
    s.mean_focal /= 3.0;
    return s;
}

} // namespace viewforge
