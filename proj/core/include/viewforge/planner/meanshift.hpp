#pragma once

#include <vector>

#include "viewforge/planner/surrogates.hpp"

namespace viewforge {

// A local maximum of the bandwidth-windowed weight density on the unit
// sphere, with the summed weight inside its window.
struct DirectionMode {
    Vec3 direction = Vec3::UnitZ();
    double weight = 0.0;
};

// Weighted mean shift over unit directions with a flat (uniform) kernel of
// angular radius bandwidth_deg, started from every ray; returns the mode with
// the highest in-window weight (ties: earliest converged start). Rays with
// non-positive weight are ignored. Throws ConfigError when no ray has
// positive weight.
DirectionMode weighted_direction_mode(const std::vector<Vec3>& rays,
                                      const std::vector<double>& weights, double bandwidth_deg);

// Orients every surrogate toward its winning gain-weighted ray cluster, then
// drops links outside the oriented frustum (the same fov_deg x frustum_size
// camera inverse_visibility linked with) and surrogates left with no
// positive-gain link. Surrogate order is preserved.
void orient_surrogates(std::vector<SurrogateCamera>& surrogates,
                       const std::vector<TargetInfo>& targets, double bandwidth_deg,
                       double fov_deg, int frustum_size);

} // namespace viewforge
