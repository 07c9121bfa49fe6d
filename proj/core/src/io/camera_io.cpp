#include "viewforge/io/camera_io.hpp"

#include <fstream>

#include "viewforge/util/error.hpp"

namespace viewforge {

using nlohmann::json;

json camera_to_json(const Camera& cam) {
    json j;
    j["id"] = cam.id;
    j["focal"] = cam.intr.focal;
    j["pp"] = {cam.intr.pp.x(), cam.intr.pp.y()};
    j["width"] = cam.intr.width;
    j["height"] = cam.intr.height;
    json r = json::array();
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) r.push_back(cam.pose.R(i, k));
    }
    j["R"] = r;
    j["C"] = {cam.pose.C.x(), cam.pose.C.y(), cam.pose.C.z()};
    return j;
}

Camera camera_from_json(const json& j) {
    Camera cam;
    try {
        cam.id = j.at("id").get<std::string>();
        cam.intr.focal = j.at("focal").get<double>();
        cam.intr.pp = Vec2(j.at("pp").at(0).get<double>(), j.at("pp").at(1).get<double>());
        cam.intr.width = j.at("width").get<int>();
        cam.intr.height = j.at("height").get<int>();
        const auto& r = j.at("R");
        if (r.size() != 9) throw IoError("camera R must have 9 entries");
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) cam.pose.R(i, k) = r.at(i * 3 + k).get<double>();
        }
        const auto& c = j.at("C");
        if (c.size() != 3) throw IoError("camera C must have 3 entries");
        cam.pose.C = Vec3(c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>());
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed camera json: ") + e.what());
    }
    return cam;
}

void write_cameras_json(const std::string& path, const std::vector<Camera>& cams) {
    json arr = json::array();
    for (const auto& c : cams) arr.push_back(camera_to_json(c));
    save_json_file(path, arr);
}

std::vector<Camera> read_cameras_json(const std::string& path) {
    json arr = load_json_file(path);
    if (!arr.is_array()) throw IoError(path + ": expected a JSON array of cameras");
    std::vector<Camera> cams;
    cams.reserve(arr.size());
    for (const auto& j : arr) cams.push_back(camera_from_json(j));
    return cams;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

} // namespace viewforge
