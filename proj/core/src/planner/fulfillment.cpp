#include "viewforge/planner/fulfillment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "viewforge/geometry/uncertainty.hpp"
#include "viewforge/util/error.hpp"
#include "viewforge/util/rng.hpp"

namespace viewforge {

ConfidenceLookup::ConfidenceLookup(const std::vector<ConfidenceImage>& images) {
    for (const ConfidenceImage& ci : images) by_id_.emplace(ci.image_id, &ci);
}

const ConfidenceImage* ConfidenceLookup::find(const std::string& image_id) const {
    auto it = by_id_.find(image_id);
    return it == by_id_.end() ? nullptr : it->second;
}

double min_pairwise_angle(const std::array<const Camera*, 3>& cams, const Vec3& point) {
    double a01 = triangulation_angle(cams[0]->pose.C, cams[1]->pose.C, point);
    double a02 = triangulation_angle(cams[0]->pose.C, cams[2]->pose.C, point);
    double a12 = triangulation_angle(cams[1]->pose.C, cams[2]->pose.C, point);
    return std::min({a01, a02, a12});
}

double confidence_at(const ConfidenceLookup& conf, const Camera& viewer, const Vec3& point,
                     double angle_deg) {
    const ConfidenceImage* ci = conf.find(viewer.id);
    if (ci == nullptr) return 0.5;
    auto proj = project_point(viewer, point);
    if (!proj || !pixel_in_bounds(viewer.intr, proj->px)) return 0.5;
    int x = static_cast<int>(std::lround(proj->px.x()));
    int y = static_cast<int>(std::lround(proj->px.y()));
    return ci->at(x, y, ci->bin_of(angle_deg));
}

namespace {

// resolution 0 for faces too small to score instead of an error
double safe_ground_resolution(const Camera& cam, const TriangleMesh& mesh, int face) {
    if (mesh.area(face) < 1e-13) return 0.0;
    return ground_resolution(cam, mesh, face);
}

// alpha-blend of resolution and uncertainty quality; f_conf applied by caller
void geometric_factors(const TriangleMesh& mesh, int face,
                       const std::array<const Camera*, 3>& cams, const PlannerConfig& cfg,
                       TripletFactors& out) {
    Vec3 centroid = mesh.centroid(face);

    double r = std::numeric_limits<double>::infinity();
    for (const Camera* cam : cams) {
        double rc = safe_ground_resolution(*cam, mesh, face);
        r = std::min(r, rc);
    }
    out.f_res = std::min(1.0, r / cfg.desired_resolution);

    Mat3 sum = Mat3::Zero();
    bool in_front = true;
    for (const Camera* cam : cams) {
        Vec3 pc = cam->pose.to_camera(centroid);
        if (pc.z() <= 0.0) {
            in_front = false;
            break;
        }
        sum += projection_normal_matrix(*cam, centroid);
    }
    if (!in_front) {
        out.f_unc = 0.0;
        return;
    }
    double u = max_uncertainty_from_normal(sum, cfg.pixel_noise_std);
    out.f_unc = std::isfinite(u) && u > 0.0 ? std::min(1.0, cfg.desired_accuracy / std::sqrt(u))
                                            : 0.0;
}

} // namespace

TripletFactors evaluate_triplet_with_confidence(const TriangleMesh& mesh, int face,
                                                const std::array<const Camera*, 3>& cams,
                                                double f_conf, const PlannerConfig& cfg) {
    TripletFactors out;
    geometric_factors(mesh, face, cams, cfg, out);
    out.f_conf = f_conf;
    out.f = (cfg.alpha * out.f_res + (1.0 - cfg.alpha) * out.f_unc) * out.f_conf;
    return out;
}

TripletFactors evaluate_triplet(const TriangleMesh& mesh, int face,
                                const std::array<const Camera*, 3>& cams,
                                const ConfidenceLookup& conf, const PlannerConfig& cfg) {
    Vec3 centroid = mesh.centroid(face);
    double angle = min_pairwise_angle(cams, centroid);

    // members ordered by distance to the triangle; first one carrying a
    // confidence image supplies f_conf
    std::array<int, 3> order{0, 1, 2};
    std::array<double, 3> dist{};
    for (int i = 0; i < 3; ++i) dist[i] = (cams[i]->pose.C - centroid).squaredNorm();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
    });
    double f_conf = 0.5;
    for (int idx : order) {
        if (conf.find(cams[idx]->id) != nullptr) {
            f_conf = confidence_at(conf, *cams[idx], centroid, angle);
            break;
        }
    }
    return evaluate_triplet_with_confidence(mesh, face, cams, f_conf, cfg);
}

FulfillmentResult estimate_fulfillment(const std::vector<Camera>& captured,
                                       const TriangleMesh& mesh, const std::vector<int>& roi,
                                       const std::vector<ConfidenceImage>& confidences,
                                       const PlannerConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    if (roi.empty()) throw ConfigError("estimate_fulfillment: empty roi");

    FulfillmentResult result;

    // random triangle subset, order fixed by the draw
    Rng rng(seed);
    std::size_t n_select = std::min<std::size_t>(roi.size(), cfg.n_triangles);
    for (std::size_t i : rng.sample_without_replacement(roi.size(), n_select)) {
        result.faces.push_back(roi[i]);
    }

    result.visibility =
        compute_visibility(mesh, result.faces, captured, cfg.render_downscale);

    ConfidenceLookup conf(confidences);
    std::size_t prior_lookups = 0;

    result.records.resize(result.faces.size());
    std::vector<int> seen;
    std::vector<Mat3> jtj;
    std::vector<double> res;
    for (std::size_t i = 0; i < result.faces.size(); ++i) {
        FulfillmentRecord& rec = result.records[i];
        rec.face = result.faces[i];

        seen.clear();
        for (int c = 0; c < result.visibility.n_cameras; ++c) {
            if (result.visibility.visible(static_cast<int>(i), c)) seen.push_back(c);
        }
        if (static_cast<int>(seen.size()) < cfg.min_cameras) continue;  // f_cov = 0
        rec.f_cov = 1.0;

        Vec3 centroid = mesh.centroid(rec.face);
        if (static_cast<int>(seen.size()) > cfg.max_view_cameras) {
            std::sort(seen.begin(), seen.end(), [&](int a, int b) {
                double da = (captured[a].pose.C - centroid).squaredNorm();
                double db = (captured[b].pose.C - centroid).squaredNorm();
                return da != db ? da < db : a < b;
            });
            seen.resize(cfg.max_view_cameras);
            std::sort(seen.begin(), seen.end());
        }

        // per-camera terms shared by all triplets of this triangle
        jtj.assign(seen.size(), Mat3::Zero());
        res.assign(seen.size(), 0.0);
        for (std::size_t a = 0; a < seen.size(); ++a) {
            const Camera& cam = captured[seen[a]];
            res[a] = safe_ground_resolution(cam, mesh, rec.face);
            jtj[a] = projection_normal_matrix(cam, centroid);
        }

        double best_f = -1.0;
        for (std::size_t a = 0; a + 2 < seen.size(); ++a) {
            for (std::size_t b = a + 1; b + 1 < seen.size(); ++b) {
                for (std::size_t c = b + 1; c < seen.size(); ++c) {
                    double r = std::min({res[a], res[b], res[c]});
                    double f_res = std::min(1.0, r / cfg.desired_resolution);
                    double u = max_uncertainty_from_normal(jtj[a] + jtj[b] + jtj[c],
                                                           cfg.pixel_noise_std);
                    double f_unc = std::isfinite(u) && u > 0.0
                                       ? std::min(1.0, cfg.desired_accuracy / std::sqrt(u))
                                       : 0.0;
                    std::array<const Camera*, 3> cams{&captured[seen[a]], &captured[seen[b]],
                                                      &captured[seen[c]]};
                    double angle = min_pairwise_angle(cams, centroid);

                    std::array<std::size_t, 3> order{a, b, c};
                    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                        double dx = (captured[seen[x]].pose.C - centroid).squaredNorm();
                        double dy = (captured[seen[y]].pose.C - centroid).squaredNorm();
                        return dx != dy ? dx < dy : x < y;
                    });
                    double f_conf = 0.5;
                    bool found_image = false;
                    for (std::size_t idx : order) {
                        if (conf.find(captured[seen[idx]].id) != nullptr) {
                            f_conf = confidence_at(conf, captured[seen[idx]], centroid, angle);
                            found_image = true;
                            break;
                        }
                    }
                    if (!found_image) ++prior_lookups;

                    double f = (cfg.alpha * f_res + (1.0 - cfg.alpha) * f_unc) * f_conf;
                    if (f > best_f) {
                        best_f = f;
                        rec.f_res = f_res;
                        rec.f_unc = f_unc;
                        rec.f_conf = f_conf;
                        rec.f = f;
                        rec.best_triplet = {captured[seen[a]].id, captured[seen[b]].id,
                                            captured[seen[c]].id};
                    }
                }
            }
        }
    }

    if (prior_lookups > 0) {
        result.warnings.push_back("estimate_fulfillment: " + std::to_string(prior_lookups) +
                                  " triplet evaluations used the 0.5 prior confidence (no "
                                  "confidence image available)");
    }
    return result;
}

TargetSelection select_targets(const std::vector<FulfillmentRecord>& records, int n_targets,
                               std::uint64_t seed) {
    if (records.empty()) throw ConfigError("select_targets: no fulfillment records");
    if (n_targets < 1) throw ConfigError("select_targets: n_targets must be >= 1");

    std::vector<double> weight(records.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const FulfillmentRecord& rec = records[i];
        if (rec.f_conf > 0.0) {
            weight[i] = std::clamp(1.0 - rec.f / rec.f_conf, 0.0, 1.0);
        }
        total += weight[i];
    }

    TargetSelection sel;
    Rng rng(seed);
    std::size_t want = std::min<std::size_t>(records.size(), static_cast<std::size_t>(n_targets));

    if (total <= 0.0) {
        sel.warnings.push_back("select_targets: all weights zero; falling back to uniform");
        for (std::size_t i : rng.sample_without_replacement(records.size(), want)) {
            sel.record_indices.push_back(static_cast<int>(i));
        }
        std::sort(sel.record_indices.begin(), sel.record_indices.end());
        return sel;
    }

    for (std::size_t draw = 0; draw < want; ++draw) {
        if (total <= 0.0) {
            sel.warnings.push_back("select_targets: positive weights exhausted after " +
                                   std::to_string(draw) + " draws");
            break;
        }
        double u = rng.uniform() * total;
        double acc = 0.0;
        std::size_t pick = records.size();
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (weight[i] <= 0.0) continue;
            acc += weight[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        if (pick == records.size()) {
            // numerical tail: take the last positive weight
            for (std::size_t i = records.size(); i-- > 0;) {
                if (weight[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        sel.record_indices.push_back(static_cast<int>(pick));
        total -= weight[pick];
        weight[pick] = 0.0;
    }
    std::sort(sel.record_indices.begin(), sel.record_indices.end());
    return sel;
}

} // namespace viewforge
