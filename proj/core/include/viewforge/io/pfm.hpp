#pragma once

#include <string>
#include <vector>

#include "viewforge/geometry/depthmap.hpp"

namespace viewforge {

// Grayscale PFM ("Pf"), scale -1.0 (little-endian), rows stored bottom-up.
// Invalid depth pixels hold +inf.
void write_pfm(const std::string& path, const std::vector<float>& data, int width, int height);
std::vector<float> read_pfm(const std::string& path, int& width, int& height);

// Append one plane to an already open stream-style file (used for
// multi-plane confidence images: b concatenated Pf blocks).
void write_pfm_planes(const std::string& path, const std::vector<std::vector<float>>& planes,
                      int width, int height);
std::vector<std::vector<float>> read_pfm_planes(const std::string& path, int& width, int& height);

void write_depthmap_pfm(const std::string& path, const DepthMap& dm);
DepthMap read_depthmap_pfm(const std::string& path, const std::string& camera_id, int downscale = 1);

} // namespace viewforge
