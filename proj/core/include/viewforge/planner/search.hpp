#pragma once

#include <string>
#include <vector>

#include "viewforge/planner/meanshift.hpp"

namespace viewforge {

// Gain an equilateral triplet realizes over a target set: the sum, over
// targets visible from all three cameras, of max(f(t, c3) - f(t), 0).
// Returns -inf when any camera position violates the safety distance.
double triplet_gain(const PlanningContext& ctx, const CameraTriplet& c3,
                    const std::vector<TargetInfo>& targets, const DistanceField& dfield);

// The bin-indexed candidate triplets of one oriented surrogate: aimed along
// its orientation at the distance of the gain-weighted centroid of its linked
// targets, one candidate per feasible angular bin (bin angles >= 120 degrees
// are skipped).
std::vector<CameraTriplet> candidate_triplets(const PlanningContext& ctx,
                                              const SurrogateCamera& surrogate,
                                              const std::vector<TargetInfo>& targets,
                                              const std::string& id_prefix = "cand");

struct BestTripletSearch {
    bool found = false;
    CameraTriplet best;       // gain field set when found
    int surrogate = -1;       // index into the surrogate array
    int bin = -1;
    double gain = 0.0;
    int evaluated = 0;        // candidates whose visibility was rendered
    int pruned = 0;           // candidates skipped by the gain bounds
    double max_bound_violation = -std::numeric_limits<double>::infinity();
    // max over evaluated candidates of (gain - candidate upper bound);
    // <= 0 certifies that pruning was sound
};

// Finds the candidate triplet with the highest gain over each surrogate's
// linked targets. Surrogates are visited in descending upper-bound order
// (per-target gains of their candidate triplets, summed without the
// visibility test); the search stops once the bound cannot beat the best
// found gain, which makes the result identical to exhaustive enumeration.
// Ties break toward the lower surrogate index, then the lower bin index.
// `exhaustive` disables all bound skips (for verification).
BestTripletSearch best_triplet(const PlanningContext& ctx,
                               const std::vector<SurrogateCamera>& surrogates,
                               const std::vector<TargetInfo>& targets,
                               const DistanceField& dfield, bool exhaustive = false);

} // namespace viewforge
