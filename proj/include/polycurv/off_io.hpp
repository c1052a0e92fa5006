#pragma once

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/format.hpp"
#include "polycurv/surface.hpp"

namespace polycurv {

namespace detail {

struct LineReader {
    std::istream& in;
    int line = 0;

    /// Next non-empty line with comments stripped.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::size_t i = 0;
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            if (i < raw.size()) {
                out = raw;
                return true;
            }
        }
        return false;
    }
};

}  // namespace detail

inline void save_off(const TriangulatedSurface3D& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "OFF\n" << s.points3.size() << ' ' << s.triangles.size() << " 0\n";
    for (const Vec3& p : s.points3)
        out << detail::fmt17(p.x) << ' ' << detail::fmt17(p.y) << ' ' << detail::fmt17(p.z) << '\n';
    for (const auto& t : s.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline TriangulatedSurface3D load_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    detail::LineReader rd{in};
    std::string line;

    if (!rd.next(line)) throw parse_error("empty OFF file", rd.line);
    std::istringstream header(line);
    std::string tag;
    header >> tag;
    long nv = -1, nf = -1, ne = 0;
    if (tag == "OFF") {
        if (!(header >> nv)) {
            if (!rd.next(line)) throw parse_error("missing count line", rd.line);
            std::istringstream counts(line);
            if (!(counts >> nv >> nf)) throw parse_error("malformed count line", rd.line);
            counts >> ne;
        } else if (!(header >> nf)) {
            throw parse_error("malformed count line", rd.line);
        } else {
            header >> ne;
        }
    } else {
        std::istringstream counts(line);
        if (!(counts >> nv >> nf)) throw parse_error("expected OFF header or counts", rd.line);
        counts >> ne;
    }
    if (nv < 0 || nf < 0) throw parse_error("negative counts", rd.line);

    std::vector<Vec3> pts(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!rd.next(line)) throw parse_error("unexpected end of file in vertex list", rd.line);
        std::istringstream ls(line);
        if (!(ls >> pts[i].x >> pts[i].y >> pts[i].z))
            throw parse_error("malformed vertex line", rd.line);
    }
    std::vector<std::array<int, 3>> tris(static_cast<std::size_t>(nf));
    for (long i = 0; i < nf; ++i) {
        if (!rd.next(line)) throw parse_error("unexpected end of file in face list", rd.line);
        std::istringstream ls(line);
        int k = 0;
        if (!(ls >> k)) throw parse_error("malformed face line", rd.line);
        if (k != 3) throw parse_error("only triangular faces supported", rd.line);
        if (!(ls >> tris[i][0] >> tris[i][1] >> tris[i][2]))
            throw parse_error("malformed face line", rd.line);
        for (int v : tris[i])
            if (v < 0 || v >= nv) throw parse_error("face index out of range", rd.line);
    }
    return TriangulatedSurface3D(std::move(pts), std::move(tris));
}

}  // namespace polycurv
