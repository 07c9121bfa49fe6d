#include "viewforge/io/pnm.hpp"

#include <fstream>

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

void read_pnm_header(std::ifstream& in, const std::string& path, const char* magic,
                     int& width, int& height) {
    std::string m;
    if (!(in >> m) || m != magic) throw IoError(path + ": wrong magic, expected " + magic);
    int maxval;
    // PNM allows '#' comments between header tokens
    auto next_int = [&in, &path]() {
        while (true) {
            in >> std::ws;
            if (in.peek() == '#') {
                std::string line;
                std::getline(in, line);
                continue;
            }
            int v;
            if (!(in >> v)) throw IoError(path + ": malformed header");
            return v;
        }
    };
    width = next_int();
    height = next_int();
    maxval = next_int();
    if (width <= 0 || height <= 0) throw IoError(path + ": bad dimensions");
    if (maxval != 255) throw IoError(path + ": only 8-bit maxval 255 is supported");
    in.get();  // single whitespace before raster
}

} // namespace

void write_pgm(const std::string& path, const std::vector<std::uint8_t>& data,
               int width, int height) {
    if (static_cast<std::size_t>(width) * height != data.size()) {
        throw IoError(path + ": PGM size mismatch");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("failed writing " + path);
}

std::vector<std::uint8_t> read_pgm(const std::string& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    read_pnm_header(in, path, "P5", width, height);
    std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!in) throw IoError(path + ": truncated PGM data");
    return data;
}

void write_ppm(const std::string& path, const ImageRgb8& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data.data()),
              static_cast<std::streamsize>(image.data.size()));
    if (!out) throw IoError("failed writing " + path);
}

ImageRgb8 read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    ImageRgb8 image;
    read_pnm_header(in, path, "P6", image.width, image.height);
    image.data.resize(static_cast<std::size_t>(image.width) * image.height * 3);
    in.read(reinterpret_cast<char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
    if (!in) throw IoError(path + ": truncated PPM data");
    return image;
}

} // namespace viewforge
