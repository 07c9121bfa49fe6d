#include "viewforge/io/pfm.hpp"

#include <cstdio>
#include <fstream>

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

void write_pfm_block(std::ofstream& out, const std::vector<float>& data, int width, int height) {
    out << "Pf\n" << width << " " << height << "\n-1.0\n";
    // bottom-up row order
    for (int y = height - 1; y >= 0; --y) {
        out.write(reinterpret_cast<const char*>(&data[static_cast<std::size_t>(y) * width]),
                  static_cast<std::streamsize>(width) * sizeof(float));
    }
}

bool read_pfm_block(std::ifstream& in, const std::string& path, std::vector<float>& data,
                    int& width, int& height) {
    std::string magic;
    if (!(in >> magic)) return false;
    if (magic != "Pf") throw IoError(path + ": expected grayscale PFM (Pf)");
    double scale;
    if (!(in >> width >> height >> scale)) throw IoError(path + ": malformed PFM header");
    if (width <= 0 || height <= 0) throw IoError(path + ": bad PFM dimensions");
    if (scale >= 0.0) throw IoError(path + ": big-endian PFM is not supported");
    in.get();  // single whitespace after the scale
    data.resize(static_cast<std::size_t>(width) * height);
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(&data[static_cast<std::size_t>(y) * width]),
                static_cast<std::streamsize>(width) * sizeof(float));
    }
    if (!in) throw IoError(path + ": truncated PFM data");
    return true;
}

} // namespace

void write_pfm(const std::string& path, const std::vector<float>& data, int width, int height) {
    if (static_cast<std::size_t>(width) * height != data.size()) {
        throw IoError(path + ": PFM size mismatch");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    write_pfm_block(out, data, width, height);
    if (!out) throw IoError("failed writing " + path);
}

std::vector<float> read_pfm(const std::string& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<float> data;
    if (!read_pfm_block(in, path, data, width, height)) throw IoError(path + ": empty PFM");
    return data;
}

void write_pfm_planes(const std::string& path, const std::vector<std::vector<float>>& planes,
                      int width, int height) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& p : planes) {
        if (static_cast<std::size_t>(width) * height != p.size()) {
            throw IoError(path + ": PFM plane size mismatch");
        }
        write_pfm_block(out, p, width, height);
    }
    if (!out) throw IoError("failed writing " + path);
}

std::vector<std::vector<float>> read_pfm_planes(const std::string& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::vector<float>> planes;
    width = height = 0;
    while (true) {
        std::vector<float> data;
        int w = 0, h = 0;
        if (!read_pfm_block(in, path, data, w, h)) break;
        if (!planes.empty() && (w != width || h != height)) {
            throw IoError(path + ": inconsistent plane dimensions");
        }
        width = w;
        height = h;
        planes.push_back(std::move(data));
    }
    if (planes.empty()) throw IoError(path + ": empty PFM");
    return planes;
}

void write_depthmap_pfm(const std::string& path, const DepthMap& dm) {
    write_pfm(path, dm.depths, dm.width, dm.height);
}

DepthMap read_depthmap_pfm(const std::string& path, const std::string& camera_id, int downscale) {
    DepthMap dm;
    dm.camera_id = camera_id;
    dm.downscale = downscale;
    dm.depths = read_pfm(path, dm.width, dm.height);
    return dm;
}

} // namespace viewforge
