#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewforge/image.hpp"

namespace viewforge {

// Binary 8-bit PGM (P5).
void write_pgm(const std::string& path, const std::vector<std::uint8_t>& data,
               int width, int height);
std::vector<std::uint8_t> read_pgm(const std::string& path, int& width, int& height);

// Binary 8-bit PPM (P6).
void write_ppm(const std::string& path, const ImageRgb8& image);
ImageRgb8 read_ppm(const std::string& path);

} // namespace viewforge
