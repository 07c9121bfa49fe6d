#include "viewforge/planner/path.hpp"

#include <algorithm>
#include <limits>
#include <memory>

#include <Eigen/Geometry>

#include "viewforge/geometry/closest_point.hpp"
#include "viewforge/geometry/render.hpp"
#include "viewforge/geometry/visibility.hpp"
#include "viewforge/io/camera_io.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

// Committed cameras (previous captures + plan prefix) with lazily cached
// renders for the overlap chain checks.
class ChainState {
  public:
    explicit ChainState(const TriangleMesh& mesh) : mesh_(mesh) {}

    void commit(const Camera& cam) {
        cameras_.push_back(cam);
        renders_.push_back(nullptr);
    }

    const Camera& camera(int i) const { return cameras_[i]; }
    int size() const { return static_cast<int>(cameras_.size()); }

    // true when `cand` overlaps at least one committed camera by o_min;
    // nearest cameras are tried first
    bool links_back(const Camera& cand, double o_min) {
        RenderResult cand_render =
            render_depth(cand, mesh_, overlap_render_downscale(cand.intr));
        std::vector<int> order(cameras_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            double di = (cameras_[i].pose.C - cand.pose.C).squaredNorm();
            double dj = (cameras_[j].pose.C - cand.pose.C).squaredNorm();
            return di != dj ? di < dj : i < j;
        });
        for (int e : order) {
            if (image_overlap_prerendered(cand, cameras_[e], cand_render, render(e)) >= o_min) {
                return true;
            }
        }
        return false;
    }

    // committed camera nearest to a position (first index on ties)
    int nearest(const Vec3& p) const {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cameras_.size(); ++i) {
            double d = (cameras_[i].pose.C - p).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }

  private:
    const RenderResult& render(int i) {
        if (!renders_[i]) {
            const Camera& cam = cameras_[i];
            renders_[i] = std::make_unique<RenderResult>(
                render_depth(cam, mesh_, overlap_render_downscale(cam.intr)));
        }
        return *renders_[i];
    }

    const TriangleMesh& mesh_;
    std::vector<Camera> cameras_;
    std::vector<std::unique_ptr<RenderResult>> renders_;
};

Camera interpolate_pose(const Camera& from, const Camera& to, double t, const std::string& id) {
    Camera cam;
    cam.id = id;
    cam.intr = to.intr;
    cam.pose.C = (1.0 - t) * from.pose.C + t * to.pose.C;
    Eigen::Quaterniond qa(from.pose.R);
    Eigen::Quaterniond qb(to.pose.R);
    cam.pose.R = qa.slerp(t, qb).normalized().toRotationMatrix();
    return cam;
}

} // namespace

ViewPlan optimize_path(const std::vector<CameraTriplet>& planned,
                       const std::vector<Camera>& previous, const TriangleMesh& mesh,
                       double o_min, const DistanceField* dfield, double safety_distance) {
    if (previous.empty()) {
        throw ConfigError("optimize_path: needs at least one previously captured camera");
    }
    if (!(o_min > 0.0 && o_min < 1.0)) {
        throw ConfigError("optimize_path: o_min must be in (0, 1)");
    }

    std::vector<Camera> pending;
    pending.reserve(planned.size() * 3);
    for (const CameraTriplet& c3 : planned) {
        for (const Camera& cam : c3.cameras) pending.push_back(cam);
    }

    ViewPlan plan;
    if (pending.empty()) return plan;

    // greedy nearest-neighbor visiting order from the last captured camera
    std::vector<int> order;
    order.reserve(pending.size());
    std::vector<std::uint8_t> used(pending.size(), 0);
    Vec3 at = previous.back().pose.C;
    for (std::size_t step = 0; step < pending.size(); ++step) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (used[i]) continue;
            double d = (pending[i].pose.C - at).norm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        used[best] = 1;
        order.push_back(best);
        at = pending[best].pose.C;
    }

    std::unique_ptr<MeshDistanceQuery> clearance;
    if (dfield && safety_distance > 0.0) clearance = std::make_unique<MeshDistanceQuery>(mesh);
    auto safe = [&](const Camera& cam) {
        if (!clearance) return true;
        if (dfield->clearance_bound(cam.pose.C) >= safety_distance) return true;
        return clearance->distance(cam.pose.C) >= safety_distance;
    };

    ChainState chain(mesh);
    for (const Camera& cam : previous) chain.commit(cam);

    constexpr int kMaxInsertions = 8;
    constexpr int kBisectionSteps = 8;

    auto append = [&plan, &chain](const Camera& cam, CameraRole role) {
        plan.cameras.push_back(cam);
        plan.roles.push_back(role);
        chain.commit(cam);
    };

    for (int idx : order) {
        const Camera& target = pending[idx];
        const Camera origin = chain.camera(chain.nearest(target.pose.C));

        double t_lo = 0.0;
        int inserted = 0;
        while (!chain.links_back(target, o_min)) {
            if (inserted == kMaxInsertions) {
                throw GeometryError("optimize_path: camera " + target.id +
                                    " cannot reach overlap " + std::to_string(o_min) +
                                    " within " + std::to_string(kMaxInsertions) +
                                    " registration poses");
            }
            std::string id = target.id + "_reg" + std::to_string(inserted);
            // largest interpolation fraction whose pose still chains back
            double lo = t_lo, hi = 1.0, best_t = -1.0;
            for (int step = 0; step < kBisectionSteps; ++step) {
                double mid = 0.5 * (lo + hi);
                Camera cand = interpolate_pose(origin, target, mid, id);
                if (safe(cand) && chain.links_back(cand, o_min)) {
                    best_t = mid;
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if (best_t <= t_lo) {
                throw GeometryError("optimize_path: camera " + target.id +
                                    " cannot reach overlap " + std::to_string(o_min) +
                                    " (no registration pose chains back)");
            }
            append(interpolate_pose(origin, target, best_t, id), CameraRole::kRegistration);
            t_lo = best_t;
            ++inserted;
        }

        append(target, CameraRole::kTripletMember);
    }

    Vec3 cursor = previous.back().pose.C;
    for (const Camera& cam : plan.cameras) {
        plan.total_path_m += (cam.pose.C - cursor).norm();
        cursor = cam.pose.C;
    }
    return plan;
}

nlohmann::json plan_file_to_json(const PlanFile& file) {
    nlohmann::json j;
    j["cameras"] = nlohmann::json::array();
    j["roles"] = nlohmann::json::array();
    j["order"] = nlohmann::json::array();
    for (std::size_t i = 0; i < file.plan.cameras.size(); ++i) {
        j["cameras"].push_back(camera_to_json(file.plan.cameras[i]));
        j["roles"].push_back(file.plan.roles[i] == CameraRole::kRegistration ? "registration"
                                                                             : "triplet");
        j["order"].push_back(i);
    }
    j["total_path_m"] = file.plan.total_path_m;
    j["config_echo"] = planner_config_to_json(file.config);
    j["seed"] = file.seed;
    return j;
}

PlanFile plan_file_from_json(const nlohmann::json& j) {
    PlanFile file;
    const auto& cams = j.at("cameras");
    const auto& roles = j.at("roles");
    if (cams.size() != roles.size()) {
        throw IoError("plan file: cameras and roles must have equal length");
    }
    file.plan.cameras.reserve(cams.size());
    for (std::size_t i = 0; i < cams.size(); ++i) {
        file.plan.cameras.push_back(camera_from_json(cams[i]));
        std::string role = roles[i].get<std::string>();
        if (role == "registration") {
            file.plan.roles.push_back(CameraRole::kRegistration);
        } else if (role == "triplet") {
            file.plan.roles.push_back(CameraRole::kTripletMember);
        } else {
            throw IoError("plan file: unknown camera role '" + role + "'");
        }
    }
    if (j.contains("order")) {
        const auto& order = j.at("order");
        if (order.size() != cams.size()) throw IoError("plan file: order length mismatch");
        std::vector<Camera> cameras(cams.size());
        std::vector<CameraRole> role_v(cams.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::size_t slot = order[i].get<std::size_t>();
            if (slot >= cams.size()) throw IoError("plan file: order index out of range");
            cameras[i] = file.plan.cameras[slot];
            role_v[i] = file.plan.roles[slot];
        }
        file.plan.cameras = std::move(cameras);
        file.plan.roles = std::move(role_v);
    }
    file.plan.total_path_m = j.at("total_path_m").get<double>();
    file.config = planner_config_from_json(j.at("config_echo"));
    file.seed = j.at("seed").get<std::uint64_t>();
    return file;
}

void write_plan_file(const std::string& path, const PlanFile& file) {
    save_json_file(path, plan_file_to_json(file));
}

PlanFile read_plan_file(const std::string& path) {
    return plan_file_from_json(load_json_file(path));
}

} // namespace viewforge
