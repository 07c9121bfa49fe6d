#include "viewforge/planner/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

bool violates_safety(const CameraTriplet& c3, const DistanceField& dfield,
                     double safety_distance) {
    for (const Camera& cam : c3.cameras) {
        if (dfield.clearance_bound(cam.pose.C) < safety_distance) return true;
    }
    return false;
}

} // namespace

double triplet_gain(const PlanningContext& ctx, const CameraTriplet& c3,
                    const std::vector<TargetInfo>& targets, const DistanceField& dfield) {
    if (violates_safety(c3, dfield, ctx.cfg->safety_distance)) {
        return -std::numeric_limits<double>::infinity();
    }
    std::vector<int> faces(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) faces[i] = targets[i].face;
    std::vector<Camera> cams(c3.cameras.begin(), c3.cameras.end());
    VisibilityTable vis = compute_visibility(*ctx.mesh, faces, cams, ctx.cfg->render_downscale);

    double gain = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (vis.count(static_cast<int>(i)) < 3) continue;
        gain += target_gain_term(ctx, c3, targets[i]);
    }
    return gain;
}

std::vector<CameraTriplet> candidate_triplets(const PlanningContext& ctx,
                                              const SurrogateCamera& surrogate,
                                              const std::vector<TargetInfo>& targets,
                                              const std::string& id_prefix) {
    if (!surrogate.oriented) throw ConfigError("candidate_triplets: surrogate not oriented");
    const PlannerConfig& cfg = *ctx.cfg;

    // aim distance: to the gain-weighted centroid of the linked targets
    Vec3 weighted = Vec3::Zero();
    double w_sum = 0.0;
    for (const TriangleLink& link : surrogate.links) {
        if (link.best_gain <= 0.0) continue;
        weighted += link.best_gain * targets[link.target].centroid;
        w_sum += link.best_gain;
    }
    if (w_sum <= 0.0) throw ConfigError("candidate_triplets: no positive-gain link");
    double aim_distance = (weighted / w_sum - surrogate.position).norm();
    if (aim_distance <= 0.0) throw ConfigError("candidate_triplets: degenerate aim distance");

    std::vector<CameraTriplet> out;
    out.reserve(cfg.bins);
    for (int bin = 0; bin < cfg.bins; ++bin) {
        double alpha = bin_center_angle(bin, cfg.bins, cfg.gamma_max_deg);
        if (alpha >= 120.0) continue;
        out.push_back(make_triplet(surrogate.position, surrogate.orientation, aim_distance,
                                   alpha, ctx.model_intr,
                                   id_prefix + "_b" + std::to_string(bin), bin));
    }
    return out;
}

BestTripletSearch best_triplet(const PlanningContext& ctx,
                               const std::vector<SurrogateCamera>& surrogates,
                               const std::vector<TargetInfo>& targets,
                               const DistanceField& dfield, bool exhaustive) {
    if (surrogates.empty()) throw ConfigError("best_triplet: no oriented surrogates");
    const PlannerConfig& cfg = *ctx.cfg;

    // Per surrogate: candidates, exact per-(link, candidate) gain terms, and
    // the bounds those terms imply. The bound of a candidate is its term sum
    // over every link (the gain only keeps links that pass the visibility
    // test, so the sum is an upper bound); the bound of a surrogate takes the
    // best term per link over all candidates.
    struct Prepared {
        std::vector<CameraTriplet> candidates;
        std::vector<std::vector<double>> terms;  // [candidate][link]
        std::vector<double> candidate_bound;
        double bound = 0.0;
    };
    std::vector<Prepared> prep(surrogates.size());
    for (std::size_t i = 0; i < surrogates.size(); ++i) {
        const SurrogateCamera& s = surrogates[i];
        Prepared& p = prep[i];
        p.candidates = candidate_triplets(ctx, s, targets);
        p.terms.assign(p.candidates.size(), std::vector<double>(s.links.size(), 0.0));
        p.candidate_bound.assign(p.candidates.size(), 0.0);
        for (std::size_t c = 0; c < p.candidates.size(); ++c) {
            for (std::size_t l = 0; l < s.links.size(); ++l) {
                double term = target_gain_term(ctx, p.candidates[c],
                                               targets[s.links[l].target]);
                p.terms[c][l] = term;
                p.candidate_bound[c] += term;
            }
        }
        for (std::size_t l = 0; l < s.links.size(); ++l) {
            double best_term = 0.0;
            for (std::size_t c = 0; c < p.candidates.size(); ++c) {
                best_term = std::max(best_term, p.terms[c][l]);
            }
            p.bound += best_term;
        }
    }

    std::vector<std::size_t> order(surrogates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return prep[a].bound != prep[b].bound ? prep[a].bound > prep[b].bound : a < b;
    });

    BestTripletSearch result;
    auto better = [&](double gain, std::size_t i, int bin) {
        if (!result.found) return gain > 0.0;
        if (gain != result.gain) return gain > result.gain;
        if (static_cast<int>(i) != result.surrogate) {
            return static_cast<int>(i) < result.surrogate;
        }
        return bin < result.bin;
    };

    std::vector<int> link_faces;
    std::vector<Camera> cams3(3);
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        std::size_t i = order[oi];
        const SurrogateCamera& s = surrogates[i];
        Prepared& p = prep[i];
        if (!exhaustive) {
            if (p.bound <= 0.0 || (result.found && p.bound < result.gain)) {
                for (std::size_t oj = oi; oj < order.size(); ++oj) {
                    result.pruned += static_cast<int>(prep[order[oj]].candidates.size());
                }
                break;
            }
        }

        link_faces.resize(s.links.size());
        for (std::size_t l = 0; l < s.links.size(); ++l) {
            link_faces[l] = targets[s.links[l].target].face;
        }

        for (std::size_t c = 0; c < p.candidates.size(); ++c) {
            const CameraTriplet& cand = p.candidates[c];
            double bound_c = p.candidate_bound[c];
            if (!exhaustive &&
                (bound_c <= 0.0 || (result.found && bound_c < result.gain))) {
                ++result.pruned;
                continue;
            }
            if (violates_safety(cand, dfield, cfg.safety_distance)) continue;

            for (int j = 0; j < 3; ++j) cams3[j] = cand.cameras[j];
            VisibilityTable vis =
                compute_visibility(*ctx.mesh, link_faces, cams3, cfg.render_downscale);
            double gain = 0.0;
            for (std::size_t l = 0; l < s.links.size(); ++l) {
                if (vis.count(static_cast<int>(l)) < 3) continue;
                gain += p.terms[c][l];
            }
            ++result.evaluated;
            result.max_bound_violation =
                std::max(result.max_bound_violation, gain - bound_c);

            if (better(gain, i, cand.bin)) {
                result.found = true;
                result.best = cand;
                result.best.gain = gain;
                result.surrogate = static_cast<int>(i);
                result.bin = cand.bin;
                result.gain = gain;
            }
        }
    }
    return result;
}

} // namespace viewforge
