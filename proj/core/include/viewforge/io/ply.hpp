#pragma once

#include <string>

#include "viewforge/geometry/mesh.hpp"

namespace viewforge {

// ASCII PLY subset: float/double vertex x/y/z (other vertex properties are
// skipped), face vertex_indices list, optional per-face scalar property
// named "material". Throws IoError on binary files or malformed headers.
TriangleMesh read_ply(const std::string& path);

void write_ply(const std::string& path, const TriangleMesh& mesh);

} // namespace viewforge
