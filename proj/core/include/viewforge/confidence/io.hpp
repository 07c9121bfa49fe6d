#pragma once

#include <string>

#include "viewforge/confidence/predict.hpp"

namespace viewforge {

// Forest container: "VFCF" magic, format version, a JSON header holding the
// training configuration and binning, then packed per-tree node/leaf tables.
// A forest trained with the same data and seed serializes byte-identically.
void write_forest(const std::string& path, const ConfidenceForest& forest);
ConfidenceForest read_forest(const std::string& path);

// Confidence image: the bins grid planes concatenated into one PFM file plus
// a JSON sidecar (<id>_conf.pfm / <id>_conf.json). Returns the sidecar path.
std::string write_confidence_image(const std::string& dir, const ConfidenceImage& ci);
ConfidenceImage read_confidence_image(const std::string& sidecar_json_path);

} // namespace viewforge
