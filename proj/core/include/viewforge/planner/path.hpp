#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "viewforge/planner/plan.hpp"

namespace viewforge {

enum class CameraRole : std::uint8_t {
    kTripletMember,  // camera of a planned triplet
    kRegistration,   // pose inserted to keep the overlap chain connected
};

// Executable acquisition plan: cameras in visit order. Invariant: every
// camera overlaps (image_overlap >= o_min) at least one camera earlier in
// the combined sequence previous-captures + plan prefix.
struct ViewPlan {
    std::vector<Camera> cameras;
    std::vector<CameraRole> roles;  // parallel to cameras
    double total_path_m = 0.0;      // includes the anchor -> first camera leg
};

// Orders the triplet cameras greedily by nearest-neighbor distance starting
// from the last previously captured camera, then walks the order inserting
// registration poses (position lerp + orientation slerp from the nearest
// earlier camera toward the target, largest overlap-satisfying fraction by
// bisection) wherever a camera would not overlap any earlier one by o_min.
// With a distance field given, inserted poses must also keep safety_distance
// mesh clearance. Throws GeometryError naming the camera when its chain
// cannot be closed within 8 insertions.
ViewPlan optimize_path(const std::vector<CameraTriplet>& planned,
                       const std::vector<Camera>& previous, const TriangleMesh& mesh,
                       double o_min, const DistanceField* dfield = nullptr,
                       double safety_distance = 0.0);

// Plan file: {cameras, roles, order, total_path_m, config_echo, seed}.
struct PlanFile {
    ViewPlan plan;
    PlannerConfig config;
    std::uint64_t seed = 0;
};

nlohmann::json plan_file_to_json(const PlanFile& file);
PlanFile plan_file_from_json(const nlohmann::json& j);
void write_plan_file(const std::string& path, const PlanFile& file);
PlanFile read_plan_file(const std::string& path);

} // namespace viewforge
