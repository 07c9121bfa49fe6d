#include "viewforge/labelgen/voting.hpp"

#include <cmath>

namespace viewforge {

VoteTally cast_votes(const TripletRecord& query, int image_index,
                     const std::vector<const TripletRecord*>& references,
                     const VotingConfig& cfg) {
    const MeasurementGrid& qgrid = query.grids[image_index];
    VoteTally tally;
    tally.width = qgrid.width;
    tally.height = qgrid.height;
    std::size_t npx = static_cast<std::size_t>(qgrid.width) * qgrid.height;
    tally.positive.assign(npx, 0.0f);
    tally.negative.assign(npx, 0.0f);

    Camera qcam = query.cameras[image_index];
    qcam.intr = query.cameras[image_index].intr.scaled(qgrid.downscale);

    // last reference index that voted on a pixel: one vote per reference
    // triplet per pixel across both passes, first vote wins
    std::vector<int> stamp(npx, -1);

    for (std::size_t r = 0; r < references.size(); ++r) {
        const TripletRecord& ref = *references[r];

        // forward pass: project supported reference measurements into the
        // query image; agreement within positive_sigma of the query depth is
        // a positive vote, cutting the query ray short a negative one
        for (int ri = 0; ri < 3; ++ri) {
            const MeasurementGrid& rgrid = ref.grids[ri];
            std::size_t rn = static_cast<std::size_t>(rgrid.width) * rgrid.height;
            for (std::size_t rpix = 0; rpix < rn; ++rpix) {
                if (rgrid.support[rpix] < 1) continue;
                if (!std::isfinite(rgrid.depth[rpix]) || !std::isfinite(rgrid.sigma[rpix])) {
                    continue;
                }
                auto proj = project_point(qcam, rgrid.point[rpix]);
                if (!proj) continue;
                int x = static_cast<int>(std::lround(proj->px.x()));
                int y = static_cast<int>(std::lround(proj->px.y()));
                if (x < 0 || x >= qgrid.width || y < 0 || y >= qgrid.height) continue;
                std::size_t qpix = qgrid.index(x, y);
                if (stamp[qpix] == static_cast<int>(r)) continue;
                if (!std::isfinite(qgrid.depth[qpix]) || !std::isfinite(qgrid.sigma[qpix])) {
                    continue;  // no query measurement to judge
                }

                double dq = qgrid.depth[qpix];
                double sq = qgrid.sigma[qpix];
                float weight = static_cast<float>(rgrid.support[rpix] / rgrid.sigma[rpix]);

                if (std::abs(proj->depth - dq) <= cfg.positive_sigma * sq) {
                    tally.positive[qpix] += weight;
                    stamp[qpix] = static_cast<int>(r);
                } else if (proj->depth < dq - cfg.blocking_sigma * sq) {
                    tally.negative[qpix] += weight;
                    stamp[qpix] = static_cast<int>(r);
                }
            }
        }

        // reverse pass: project each query measurement into the reference
        // images; when it cuts a supported reference measurement's viewing
        // ray short, that measurement votes negative on the query pixel
        for (int ri = 0; ri < 3; ++ri) {
            const MeasurementGrid& rgrid = ref.grids[ri];
            Camera rcam = ref.cameras[ri];
            rcam.intr = ref.cameras[ri].intr.scaled(rgrid.downscale);

            for (std::size_t qpix = 0; qpix < npx; ++qpix) {
                if (stamp[qpix] == static_cast<int>(r)) continue;
                if (!std::isfinite(qgrid.depth[qpix]) || !std::isfinite(qgrid.sigma[qpix])) {
                    continue;
                }
                auto proj = project_point(rcam, qgrid.point[qpix]);
                if (!proj) continue;
                int x = static_cast<int>(std::lround(proj->px.x()));
                int y = static_cast<int>(std::lround(proj->px.y()));
                if (x < 0 || x >= rgrid.width || y < 0 || y >= rgrid.height) continue;
                std::size_t rpix = rgrid.index(x, y);
                if (rgrid.support[rpix] < 1) continue;
                if (!std::isfinite(rgrid.depth[rpix]) || !std::isfinite(rgrid.sigma[rpix])) {
                    continue;
                }
                if (proj->depth <
                    rgrid.depth[rpix] - cfg.blocking_sigma * rgrid.sigma[rpix]) {
                    tally.negative[qpix] +=
                        static_cast<float>(rgrid.support[rpix] / rgrid.sigma[rpix]);
                    stamp[qpix] = static_cast<int>(r);
                }
            }
        }
    }
    return tally;
}

LabelImage label_from_votes(const VoteTally& tally, const std::string& image_id,
                            double representative_angle_deg) {
    LabelImage im;
    im.image_id = image_id;
    im.width = tally.width;
    im.height = tally.height;
    std::size_t npx = tally.positive.size();
    im.labels.assign(npx, LabelImage::kUnlabeled);
    im.angle_deg.assign(npx, std::numeric_limits<float>::infinity());
    for (std::size_t i = 0; i < npx; ++i) {
        if (tally.positive[i] > tally.negative[i]) {
            im.labels[i] = LabelImage::kPositive;
        } else if (tally.negative[i] > tally.positive[i]) {
            im.labels[i] = LabelImage::kNegative;
        } else {
            continue;  // tie or no votes
        }
        im.angle_deg[i] = static_cast<float>(representative_angle_deg);
    }
    return im;
}

} // namespace viewforge
