#include "viewforge/confidence/io.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "viewforge/io/camera_io.hpp"
#include "viewforge/io/pfm.hpp"
#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

constexpr char kMagic[4] = {'V', 'F', 'C', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("forest file: truncated");
    return v;
}

} // namespace

void write_forest(const std::string& path, const ConfidenceForest& forest) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);

    nlohmann::json header{
        {"bins", forest.bins},
        {"gamma_max", forest.gamma_max},
        {"tree_count", forest.trees.size()},
        {"config",
         {{"trees", forest.config.trees},
          {"max_depth", forest.config.max_depth},
          {"min_leaf", forest.config.min_leaf},
          {"node_tests", forest.config.node_tests},
          {"thresholds", forest.config.thresholds},
          {"node_samples", forest.config.node_samples},
          {"seed", forest.config.seed}}}};
    std::string js = header.dump();

    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(js.size()));
    os.write(js.data(), static_cast<std::streamsize>(js.size()));

    for (const Tree& tree : forest.trees) {
        put<std::uint32_t>(os, static_cast<std::uint32_t>(tree.nodes.size()));
        put<std::uint32_t>(os, static_cast<std::uint32_t>(tree.leaves.size()));
        for (const TreeNode& n : tree.nodes) {
            put<std::uint8_t>(os, static_cast<std::uint8_t>(n.test.kind));
            put<std::int8_t>(os, n.test.dx1);
            put<std::int8_t>(os, n.test.dy1);
            put<std::int8_t>(os, n.test.dx2);
            put<std::int8_t>(os, n.test.dy2);
            put<std::uint8_t>(os, n.test.ch1);
            put<std::uint8_t>(os, n.test.ch2);
            put<float>(os, n.test.threshold);
            put<std::int32_t>(os, n.left);
            put<std::int32_t>(os, n.right);
            put<std::int32_t>(os, n.leaf);
        }
        for (const TreeLeaf& leaf : tree.leaves) {
            put<std::uint32_t>(os, leaf.n_pos);
            put<std::uint32_t>(os, leaf.n_neg);
            put<std::uint32_t>(os, static_cast<std::uint32_t>(leaf.bins.size()));
            for (const BinStats& b : leaf.bins) {
                put<std::uint32_t>(os, b.pos);
                put<std::uint32_t>(os, b.neg);
                put<float>(os, b.confidence);
            }
        }
    }
    if (!os) throw IoError("failed while writing " + path);
}

ConfidenceForest read_forest(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path);

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) {
        throw IoError(path + ": not a forest file");
    }
    if (get<std::uint32_t>(is) != kVersion) throw IoError(path + ": unsupported version");

    std::uint32_t jlen = get<std::uint32_t>(is);
    std::string js(jlen, '\0');
    is.read(js.data(), jlen);
    if (!is) throw IoError(path + ": truncated header");

    ConfidenceForest forest;
    std::size_t tree_count = 0;
    try {
        nlohmann::json header = nlohmann::json::parse(js);
        forest.bins = header.at("bins").get<int>();
        forest.gamma_max = header.at("gamma_max").get<double>();
        tree_count = header.at("tree_count").get<std::size_t>();
        const auto& c = header.at("config");
        forest.config.trees = c.at("trees").get<int>();
        forest.config.max_depth = c.at("max_depth").get<int>();
        forest.config.min_leaf = c.at("min_leaf").get<int>();
        forest.config.node_tests = c.at("node_tests").get<int>();
        forest.config.thresholds = c.at("thresholds").get<int>();
        forest.config.node_samples = c.at("node_samples").get<int>();
        forest.config.seed = c.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": bad forest header: " + e.what());
    }

    for (std::size_t t = 0; t < tree_count; ++t) {
        Tree tree;
        std::uint32_t n_nodes = get<std::uint32_t>(is);
        std::uint32_t n_leaves = get<std::uint32_t>(is);
        tree.nodes.resize(n_nodes);
        for (TreeNode& n : tree.nodes) {
            n.test.kind = static_cast<SplitTest::Kind>(get<std::uint8_t>(is));
            n.test.dx1 = get<std::int8_t>(is);
            n.test.dy1 = get<std::int8_t>(is);
            n.test.dx2 = get<std::int8_t>(is);
            n.test.dy2 = get<std::int8_t>(is);
            n.test.ch1 = get<std::uint8_t>(is);
            n.test.ch2 = get<std::uint8_t>(is);
            n.test.threshold = get<float>(is);
            n.left = get<std::int32_t>(is);
            n.right = get<std::int32_t>(is);
            n.leaf = get<std::int32_t>(is);
            if (n.leaf < 0 &&
                (n.left < 0 || n.right < 0 || n.left >= static_cast<int>(n_nodes) ||
                 n.right >= static_cast<int>(n_nodes))) {
                throw IoError(path + ": node with invalid children");
            }
            if (n.leaf >= static_cast<int>(n_leaves)) {
                throw IoError(path + ": node with invalid leaf index");
            }
        }
        tree.leaves.resize(n_leaves);
        for (TreeLeaf& leaf : tree.leaves) {
            leaf.n_pos = get<std::uint32_t>(is);
            leaf.n_neg = get<std::uint32_t>(is);
            std::uint32_t nb = get<std::uint32_t>(is);
            leaf.bins.resize(nb);
            for (BinStats& b : leaf.bins) {
                b.pos = get<std::uint32_t>(is);
                b.neg = get<std::uint32_t>(is);
                b.confidence = get<float>(is);
            }
        }
        forest.trees.push_back(std::move(tree));
    }
    return forest;
}

std::string write_confidence_image(const std::string& dir, const ConfidenceImage& ci) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path base(dir);
    std::string planes_file = ci.image_id + "_conf.pfm";
    std::string sidecar = (base / (ci.image_id + "_conf.json")).string();

    std::vector<std::vector<float>> planes(ci.bins);
    std::size_t nodes = static_cast<std::size_t>(ci.grid_w) * ci.grid_h;
    for (int b = 0; b < ci.bins; ++b) {
        planes[b].resize(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            planes[b][i] = ci.data[i * ci.bins + b];
        }
    }
    write_pfm_planes((base / planes_file).string(), planes, ci.grid_w, ci.grid_h);

    nlohmann::json j{{"image_id", ci.image_id}, {"width", ci.width},
                     {"height", ci.height},    {"step", ci.step},
                     {"bins", ci.bins},        {"gamma_max", ci.gamma_max},
                     {"planes_file", planes_file}};
    save_json_file(sidecar, j);
    return sidecar;
}

ConfidenceImage read_confidence_image(const std::string& sidecar_json_path) {
    namespace fs = std::filesystem;
    nlohmann::json j = load_json_file(sidecar_json_path);
    fs::path base = fs::path(sidecar_json_path).parent_path();

    ConfidenceImage ci;
    std::string planes_file;
    try {
        ci.image_id = j.at("image_id").get<std::string>();
        ci.width = j.at("width").get<int>();
        ci.height = j.at("height").get<int>();
        ci.step = j.at("step").get<int>();
        ci.bins = j.at("bins").get<int>();
        ci.gamma_max = j.at("gamma_max").get<double>();
        planes_file = j.at("planes_file").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("confidence sidecar " + sidecar_json_path + ": " + e.what());
    }
    if (ci.step < 1 || ci.bins < 1) {
        throw IoError(sidecar_json_path + ": bad step or bin count");
    }

    int w = 0, h = 0;
    auto planes = read_pfm_planes((base / planes_file).string(), w, h);
    if (static_cast<int>(planes.size()) != ci.bins) {
        throw IoError(sidecar_json_path + ": plane count does not match bins");
    }
    ci.grid_w = w;
    ci.grid_h = h;
    ci.data.resize(static_cast<std::size_t>(w) * h * ci.bins);
    for (int b = 0; b < ci.bins; ++b) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
            ci.data[i * ci.bins + b] = planes[b][i];
        }
    }
    return ci;
}

} // namespace viewforge
