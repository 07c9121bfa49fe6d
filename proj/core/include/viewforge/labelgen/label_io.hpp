#pragma once

#include <string>

#include "viewforge/labelgen/voting.hpp"

namespace viewforge {

// A label image is stored as three files sharing a stem derived from the
// image id: <id>_labels.pgm (0 = unlabeled, 1 = negative, 2 = positive),
// <id>_angles.pfm (per-pixel angle in degrees, +inf where unlabeled), and
// <id>_labels.json ({image_id, label_file, angle_deg_per_pixel_file}).
// Returns the path of the sidecar JSON.
std::string write_label_image(const std::string& dir, const LabelImage& image);

LabelImage read_label_image(const std::string& sidecar_json_path);

} // namespace viewforge
