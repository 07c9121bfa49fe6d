#include "viewforge/labelgen/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/geometry/mesh_ops.hpp"
#include "viewforge/geometry/render.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

std::vector<LabelImage> generate_labels(const std::vector<Camera>& cameras,
                                        const TriangleMesh& mesh, MvsBackend& backend,
                                        const LabelGenConfig& cfg,
                                        const std::map<std::string, DepthMap>* ground_truth,
                                        LabelGenReport* report) {
    LabelGenReport local_report;
    LabelGenReport& rep = report ? *report : local_report;

    Rng rng(cfg.seed);
    auto samples = sample_triplets(cameras, mesh, cfg.sampling, rng, &rep.warnings);
    rep.triplets_sampled = static_cast<int>(samples.size());

    std::map<std::string, const Camera*> camera_by_id;
    for (const auto& c : cameras) camera_by_id[c.id] = &c;

    // run the backend and build measurement records
    std::vector<TripletRecord> records;
    records.reserve(samples.size());
    for (const auto& s : samples) {
        std::array<Camera, 3> tri_cams;
        for (int i = 0; i < 3; ++i) tri_cams[i] = *camera_by_id.at(s.camera_ids[i]);
        std::array<DepthMap, 3> dms;
        if (!backend.run(tri_cams, dms)) {
            ++rep.triplets_failed;
            rep.warnings.push_back("backend " + backend.name() + " failed on triplet " +
                                   s.camera_ids[0] + "/" + s.camera_ids[1] + "/" +
                                   s.camera_ids[2]);
            continue;
        }
        TripletRecord rec;
        rec.index = static_cast<int>(records.size());
        rec.sample = s;
        rec.cameras = tri_cams;
        rec.summary = make_triplet_summary(tri_cams);
        for (int i = 0; i < 3; ++i) {
            rec.grids[i] = make_measurement_grid(tri_cams[i], dms[i], tri_cams,
                                                 cfg.pixel_noise_std);
        }
        records.push_back(std::move(rec));
    }
    rep.triplets_processed = static_cast<int>(records.size());

    // support stage: every other record acts as a reference reconstruction
    SupportConfig support_cfg = cfg.support;
    support_cfg.positive_sigma = cfg.voting.positive_sigma;
    for (auto& rec : records) {
        std::vector<const TripletRecord*> refs;
        refs.reserve(records.size() - 1);
        for (const auto& other : records) {
            if (other.index != rec.index) refs.push_back(&other);
        }
        compute_support(rec, refs, support_cfg);
    }

    // the shrunk/expanded scene meshes certify where output was possible
    auto se = shrink_expand_mesh(mesh);
    std::map<std::string, std::pair<DepthMap, DepthMap>> mesh_renders;

    // per-camera merged outputs (+ the winning measurement, for accuracy)
    std::map<std::string, LabelImage> merged;
    std::map<std::string, std::vector<float>> meas_depth;
    std::map<std::string, std::vector<float>> meas_sigma;

    for (const auto& rec : records) {
        std::vector<const TripletRecord*> refs;
        for (const auto& other : records) {
            if (other.index != rec.index) refs.push_back(&other);
        }
        for (int qi = 0; qi < 3; ++qi) {
            const MeasurementGrid& grid = rec.grids[qi];
            const Camera& cam = rec.cameras[qi];

            VoteTally tally = cast_votes(rec, qi, refs, cfg.voting);
            LabelImage partial =
                label_from_votes(tally, cam.id, rec.sample.representative_angle_deg);

            // reconstruct the raw depthmap view of this grid for hole logic
            DepthMap dm;
            dm.camera_id = cam.id;
            dm.width = grid.width;
            dm.height = grid.height;
            dm.downscale = grid.downscale;
            dm.depths = grid.depth;

            auto it = mesh_renders.find(cam.id);
            if (it == mesh_renders.end()) {
                RenderResult rs = render_depth(cam, se.shrunk, grid.downscale);
                RenderResult re = render_depth(cam, se.expanded, grid.downscale);
                it = mesh_renders
                         .emplace(cam.id, std::make_pair(std::move(rs.depth),
                                                         std::move(re.depth)))
                         .first;
            }
            auto missing = detect_missing_prerendered(dm, it->second.first, it->second.second,
                                                      &grid.sigma, cfg.augment);
            for (std::size_t i = 0; i < missing.size(); ++i) {
                if (missing[i] && partial.labels[i] == LabelImage::kUnlabeled) {
                    partial.labels[i] = LabelImage::kNegative;
                    partial.angle_deg[i] =
                        static_cast<float>(rec.sample.representative_angle_deg);
                }
            }

            // merge (records are processed in ascending index order, so a
            // later triplet overwrites earlier labels pixel-wise)
            auto mit = merged.find(cam.id);
            if (mit == merged.end()) {
                LabelImage blank;
                blank.image_id = cam.id;
                blank.width = grid.width;
                blank.height = grid.height;
                blank.labels.assign(partial.labels.size(), LabelImage::kUnlabeled);
                blank.angle_deg.assign(partial.labels.size(),
                                       std::numeric_limits<float>::infinity());
                mit = merged.emplace(cam.id, std::move(blank)).first;
                meas_depth[cam.id].assign(partial.labels.size(),
                                          std::numeric_limits<float>::infinity());
                meas_sigma[cam.id].assign(partial.labels.size(),
                                          std::numeric_limits<float>::infinity());
            }
            if (mit->second.width != grid.width || mit->second.height != grid.height) {
                throw ConfigError("generate_labels: inconsistent depthmap sizes for camera " +
                                  cam.id);
            }
            auto& out = mit->second;
            auto& md = meas_depth[cam.id];
            auto& ms = meas_sigma[cam.id];
            for (std::size_t i = 0; i < partial.labels.size(); ++i) {
                if (partial.labels[i] == LabelImage::kUnlabeled) continue;
                out.labels[i] = partial.labels[i];
                out.angle_deg[i] = partial.angle_deg[i];
                md[i] = grid.depth[i];
                ms[i] = grid.sigma[i];
            }
        }
    }

    // emit one image per camera, empty where no triplet covered it
    std::vector<LabelImage> out;
    out.reserve(cameras.size());
    std::size_t labeled = 0, total = 0, correct = 0;
    for (const auto& cam : cameras) {
        auto it = merged.find(cam.id);
        if (it == merged.end()) {
            LabelImage blank;
            blank.image_id = cam.id;
            blank.width = cam.intr.width;
            blank.height = cam.intr.height;
            blank.labels.assign(static_cast<std::size_t>(cam.intr.width) * cam.intr.height,
                                LabelImage::kUnlabeled);
            blank.angle_deg.assign(blank.labels.size(),
                                   std::numeric_limits<float>::infinity());
            out.push_back(std::move(blank));
        } else {
            out.push_back(std::move(it->second));
        }
        const LabelImage& im = out.back();
        rep.per_image_density.emplace_back(im.image_id, im.density());
        total += im.labels.size();
        for (auto l : im.labels) labeled += l != LabelImage::kUnlabeled;

        if (ground_truth) {
            auto git = ground_truth->find(im.image_id);
            if (git == ground_truth->end()) continue;
            const DepthMap& gt = git->second;
            if (gt.width != im.width || gt.height != im.height) {
                throw ConfigError("generate_labels: ground truth size mismatch for image " +
                                  im.image_id);
            }
            const auto& md = meas_depth[im.image_id];
            const auto& ms = meas_sigma[im.image_id];
            for (int y = 0; y < im.height; ++y) {
                for (int x = 0; x < im.width; ++x) {
                    std::size_t i = static_cast<std::size_t>(y) * im.width + x;
                    auto label = im.labels[i];
                    if (label == LabelImage::kUnlabeled) continue;
                    bool gt_valid = gt.valid(x, y);
                    bool has_meas = !md.empty() && std::isfinite(md[i]);
                    bool accurate = gt_valid && has_meas &&
                                    std::abs(md[i] - gt.at(x, y)) <=
                                        cfg.gt_tolerance_sigma * ms[i];
                    if (label == LabelImage::kPositive) {
                        correct += accurate;
                    } else {
                        // negative: right when the measurement is wrong, or
                        // when a hole sits over real geometry
                        correct += has_meas ? !accurate : gt_valid;
                    }
                }
            }
        }
    }
    rep.label_density = total > 0 ? static_cast<double>(labeled) / total : 0.0;
    if (ground_truth && labeled > 0) {
        rep.labeling_accuracy = static_cast<double>(correct) / labeled;
    }
    return out;
}

} // namespace viewforge
