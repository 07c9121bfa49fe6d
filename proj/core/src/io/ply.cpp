#include "viewforge/io/ply.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "viewforge/util/error.hpp"

namespace viewforge {

namespace {

struct PropertyDecl {
    bool is_list = false;
    std::string name;
};

struct ElementDecl {
    std::string name;
    long count = 0;
    std::vector<PropertyDecl> props;
};

} // namespace

TriangleMesh read_ply(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line) || line.substr(0, 3) != "ply") {
        throw IoError(path + ": not a PLY file");
    }

    std::vector<ElementDecl> elements;
    bool ascii = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "format") {
            std::string fmt;
            ls >> fmt;
            ascii = (fmt == "ascii");
        } else if (tok == "element") {
            ElementDecl e;
            ls >> e.name >> e.count;
            elements.push_back(e);
        } else if (tok == "property") {
            if (elements.empty()) throw IoError(path + ": property before element");
            PropertyDecl p;
            std::string type;
            ls >> type;
            if (type == "list") {
                std::string ct, vt;
                ls >> ct >> vt >> p.name;
                p.is_list = true;
            } else {
                ls >> p.name;
            }
            elements.back().props.push_back(p);
        } else if (tok == "end_header") {
            break;
        } else if (tok == "comment" || tok == "obj_info" || tok.empty()) {
            continue;
        } else {
            throw IoError(path + ": unsupported header line: " + line);
        }
    }
    if (!ascii) throw IoError(path + ": only ascii PLY is supported");

    TriangleMesh mesh;
    for (const auto& elem : elements) {
        if (elem.name == "vertex") {
            int ix = -1, iy = -1, iz = -1;
            for (std::size_t i = 0; i < elem.props.size(); ++i) {
                if (elem.props[i].is_list) throw IoError(path + ": list property on vertices");
                if (elem.props[i].name == "x") ix = static_cast<int>(i);
                if (elem.props[i].name == "y") iy = static_cast<int>(i);
                if (elem.props[i].name == "z") iz = static_cast<int>(i);
            }
            if (ix < 0 || iy < 0 || iz < 0) throw IoError(path + ": vertex missing x/y/z");
            mesh.vertices.reserve(elem.count);
            std::vector<double> vals(elem.props.size());
            for (long v = 0; v < elem.count; ++v) {
                for (auto& x : vals) {
                    if (!(in >> x)) throw IoError(path + ": truncated vertex data");
                }
                mesh.vertices.emplace_back(vals[ix], vals[iy], vals[iz]);
            }
        } else if (elem.name == "face") {
            int imat = -1;
            int ilist = -1;
            for (std::size_t i = 0; i < elem.props.size(); ++i) {
                if (elem.props[i].is_list &&
                    (elem.props[i].name == "vertex_indices" || elem.props[i].name == "vertex_index")) {
                    ilist = static_cast<int>(i);
                } else if (!elem.props[i].is_list && elem.props[i].name == "material") {
                    imat = static_cast<int>(i);
                }
            }
            if (ilist < 0) throw IoError(path + ": face element missing vertex_indices");
            mesh.faces.reserve(elem.count);
            if (imat >= 0) mesh.materials.reserve(elem.count);
            for (long fi = 0; fi < elem.count; ++fi) {
                std::array<int, 3> tri{0, 0, 0};
                std::int32_t material = 0;
                for (std::size_t i = 0; i < elem.props.size(); ++i) {
                    if (static_cast<int>(i) == ilist) {
                        int n;
                        if (!(in >> n)) throw IoError(path + ": truncated face data");
                        if (n != 3) throw IoError(path + ": only triangle faces are supported");
                        for (int k = 0; k < 3; ++k) {
                            if (!(in >> tri[k])) throw IoError(path + ": truncated face data");
                        }
                    } else {
                        double v;
                        if (!(in >> v)) throw IoError(path + ": truncated face data");
                        if (static_cast<int>(i) == imat) material = static_cast<std::int32_t>(v);
                    }
                }
                for (int k = 0; k < 3; ++k) {
                    if (tri[k] < 0 || tri[k] >= static_cast<int>(mesh.vertices.size())) {
                        throw IoError(path + ": face references missing vertex");
                    }
                }
                mesh.faces.push_back(tri);
                if (imat >= 0) mesh.materials.push_back(material);
            }
        } else {
            // skip unknown elements line by line (one line per item in ascii)
            for (long i = 0; i < elem.count; ++i) std::getline(in, line);
        }
    }
    return mesh;
}

void write_ply(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "element face " << mesh.faces.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    if (mesh.has_materials()) out << "property int material\n";
    out << "end_header\n";

    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2];
        if (mesh.has_materials()) out << ' ' << mesh.materials[f];
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

} // namespace viewforge
