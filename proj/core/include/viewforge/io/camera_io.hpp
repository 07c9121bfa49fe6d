#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "viewforge/geometry/camera.hpp"

namespace viewforge {

// Cameras are stored as a JSON array of
// {id, focal, pp: [x, y], width, height, R: [9 row-major], C: [3]}.
nlohmann::json camera_to_json(const Camera& cam);
Camera camera_from_json(const nlohmann::json& j);

void write_cameras_json(const std::string& path, const std::vector<Camera>& cams);
std::vector<Camera> read_cameras_json(const std::string& path);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

} // namespace viewforge
