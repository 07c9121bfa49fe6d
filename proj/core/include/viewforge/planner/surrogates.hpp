#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewforge/planner/distance_field.hpp"
#include "viewforge/planner/fulfillment.hpp"
#include "viewforge/planner/triplets.hpp"

namespace viewforge {

// One planning target: a low-fulfillment triangle with its current score and
// the captured cameras that see it.
struct TargetInfo {
    int face = -1;
    Vec3 centroid = Vec3::Zero();
    double fulfillment = 0.0;        // f(t) under the captured cameras
    std::vector<int> observers;      // captured camera indices seeing the triangle
};

// Visibility link from a candidate camera position to a target, with the
// fulfillment gain a hypothetical triplet at that position would realize per
// angular bin (filled by compute_potential_gains).
struct TriangleLink {
    int target = -1;                 // index into the target array
    std::vector<double> gain_per_bin;
    double best_gain = 0.0;          // max over bins
};

// Candidate camera position. Unoriented after sampling; orientation is set by
// the mean-shift step, after which links outside the oriented frustum are
// dropped.
struct SurrogateCamera {
    Vec3 position = Vec3::Zero();
    std::vector<TriangleLink> links;
    bool oriented = false;
    Vec3 orientation = Vec3::UnitZ();
    double total_potential = 0.0;    // sum of link best gains
};

// Read-only state shared by the gain and search stages.
struct PlanningContext {
    const TriangleMesh* mesh = nullptr;
    const std::vector<Camera>* captured = nullptr;
    const ConfidenceLookup* confidences = nullptr;
    const PlannerConfig* cfg = nullptr;
    CameraIntrinsics model_intr;  // physical camera model for planned cameras
};

struct SurrogateSamples {
    std::vector<SurrogateCamera> surrogates;
    std::vector<std::string> warnings;
};

// Uniform positions in `bounds` with mesh clearance >= safety_distance
// (conservative field bound first, exact surface distance as the fallback).
// Keeps sampling until n_positions are accepted or the retry budget
// (retry_factor * n_positions attempts) runs out, then returns fewer with a
// warning. Throws ConfigError when nothing is accepted at all.
SurrogateSamples sample_surrogates(const TriangleMesh& mesh, const DistanceField& dfield,
                                   int n_positions, const Aabb& bounds, double safety_distance,
                                   std::uint64_t seed, int retry_factor = 20);

// Pinhole camera at `center` looking along `axis` with a square fov_deg x
// fov_deg field of view on a size x size buffer.
Camera make_virtual_camera(const std::string& id, const Vec3& center, const Vec3& axis,
                           double fov_deg, int size);

// For every target, renders the mesh from a virtual camera at the target's
// centroid along its normal and links each surrogate position that falls
// inside the frustum nearer than the depth buffer. Links are appended to the
// surrogates with empty gains.
void inverse_visibility(const TriangleMesh& mesh, const std::vector<TargetInfo>& targets,
                        std::vector<SurrogateCamera>& surrogates, double fov_deg,
                        int render_size);

// Confidence for a hypothetical triplet near `position` observing `target`:
// read from the confidence image of the captured observer closest to the
// position; 0.5 prior when no observer has one.
double hypothetical_confidence(const PlanningContext& ctx, const TargetInfo& target,
                               const Vec3& position, double angle_deg);

// Gain a camera triplet would add for one target: max(f(t, c3) - f(t), 0)
// with the confidence sourced near the triplet center.
double target_gain_term(const PlanningContext& ctx, const CameraTriplet& c3,
                        const TargetInfo& target);

// Per-bin potential gain of a surrogate for one linked target: for each bin,
// the gain of the hypothetical equilateral triplet centered on the surrogate
// with every camera facing the target's centroid.
std::vector<double> potential_gain(const PlanningContext& ctx, const SurrogateCamera& surrogate,
                                   const TargetInfo& target);

// Fills every link's per-bin gains and the surrogates' total potential.
void compute_potential_gains(const PlanningContext& ctx,
                             std::vector<SurrogateCamera>& surrogates,
                             const std::vector<TargetInfo>& targets);

} // namespace viewforge
