#include "viewforge/image.hpp"

#include <cmath>

namespace viewforge {

namespace {

double srgb_to_linear(std::uint8_t v8) {
    double v = v8 / 255.0;
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double d = 6.0 / 29.0;
    return t > d * d * d ? std::cbrt(t) : t / (3.0 * d * d) + 4.0 / 29.0;
}

} // namespace

std::array<float, 3> rgb_to_lab_pixel(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    double r = srgb_to_linear(r8);
    double g = srgb_to_linear(g8);
    double b = srgb_to_linear(b8);

    // sRGB D65 reference white
    double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / 0.95047;
    double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / 1.08883;

    double fx = lab_f(x), fy = lab_f(y), fz = lab_f(z);
    return {static_cast<float>(116.0 * fy - 16.0),
            static_cast<float>(500.0 * (fx - fy)),
            static_cast<float>(200.0 * (fy - fz))};
}

ImageLab rgb_to_lab(const ImageRgb8& rgb) {
    ImageLab lab;
    lab.id = rgb.id;
    lab.width = rgb.width;
    lab.height = rgb.height;
    lab.data.resize(rgb.data.size());
    for (std::size_t i = 0; i < rgb.data.size(); i += 3) {
        auto p = rgb_to_lab_pixel(rgb.data[i], rgb.data[i + 1], rgb.data[i + 2]);
        lab.data[i] = p[0];
        lab.data[i + 1] = p[1];
        lab.data[i + 2] = p[2];
    }
    return lab;
}

} // namespace viewforge
