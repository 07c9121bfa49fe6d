#include "viewforge/labelgen/label_io.hpp"

#include <filesystem>

#include "viewforge/io/camera_io.hpp"
#include "viewforge/io/pfm.hpp"
#include "viewforge/io/pnm.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

std::string write_label_image(const std::string& dir, const LabelImage& image) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path base(dir);
    std::string label_file = image.image_id + "_labels.pgm";
    std::string angle_file = image.image_id + "_angles.pfm";
    std::string sidecar = (base / (image.image_id + "_labels.json")).string();

    write_pgm((base / label_file).string(), image.labels, image.width, image.height);
    write_pfm((base / angle_file).string(), image.angle_deg, image.width, image.height);

    nlohmann::json j{{"image_id", image.image_id},
                     {"label_file", label_file},
                     {"angle_deg_per_pixel_file", angle_file}};
    save_json_file(sidecar, j);
    return sidecar;
}

LabelImage read_label_image(const std::string& sidecar_json_path) {
    namespace fs = std::filesystem;
    nlohmann::json j = load_json_file(sidecar_json_path);
    fs::path base = fs::path(sidecar_json_path).parent_path();
    LabelImage im;
    try {
        im.image_id = j.at("image_id").get<std::string>();
        std::string label_file = j.at("label_file").get<std::string>();
        std::string angle_file = j.at("angle_deg_per_pixel_file").get<std::string>();

        int lw = 0, lh = 0;
        im.labels = read_pgm((base / label_file).string(), lw, lh);
        int aw = 0, ah = 0;
        im.angle_deg = read_pfm((base / angle_file).string(), aw, ah);
        if (aw != lw || ah != lh) {
            throw IoError("label image " + sidecar_json_path + ": size mismatch");
        }
        im.width = lw;
        im.height = lh;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("label sidecar " + sidecar_json_path + ": " + e.what());
    }
    for (auto l : im.labels) {
        if (l > LabelImage::kPositive) {
            throw IoError("label image " + sidecar_json_path + ": bad label value");
        }
    }
    return im;
}

} // namespace viewforge
