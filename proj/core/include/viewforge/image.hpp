#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace viewforge {

struct ImageRgb8 {
    std::string id;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // interleaved rgb

    static ImageRgb8 zeros(const std::string& id, int w, int h) {
        ImageRgb8 im;
        im.id = id;
        im.width = w;
        im.height = h;
        im.data.assign(static_cast<std::size_t>(w) * h * 3, 0);
        return im;
    }

    std::uint8_t* px(int x, int y) { return &data[(static_cast<std::size_t>(y) * width + x) * 3]; }
    const std::uint8_t* px(int x, int y) const {
        return &data[(static_cast<std::size_t>(y) * width + x) * 3];
    }
};

// CIE Lab (D65), channel-planar-free: interleaved L, a, b floats.
struct ImageLab {
    std::string id;
    int width = 0;
    int height = 0;
    std::vector<float> data;

    // Clamped pixel read of one channel (0 = L, 1 = a, 2 = b).
    float at(int x, int y, int ch) const {
        x = x < 0 ? 0 : (x >= width ? width - 1 : x);
        y = y < 0 ? 0 : (y >= height ? height - 1 : y);
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + ch];
    }
};

ImageLab rgb_to_lab(const ImageRgb8& rgb);

std::array<float, 3> rgb_to_lab_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b);

} // namespace viewforge
