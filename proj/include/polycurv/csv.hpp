#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/format.hpp"
#include "polycurv/geometry.hpp"

namespace polycurv {

/// Simple column/row table; numeric cells are formatted with 17 significant
/// digits so CSV output is deterministic and round-trips.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

    void add_row(std::initializer_list<double> values) {
        std::vector<std::string> r;
        for (double v : values) r.push_back(detail::fmt17(v));
        rows.push_back(std::move(r));
    }

    void add_row_mixed(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

    std::string to_csv() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << columns[i] << (i + 1 < columns.size() ? "," : "");
        out << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                out << r[i] << (i + 1 < r.size() ? "," : "");
            out << '\n';
        }
        return out.str();
    }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace detail

/// Planar vertices from a CSV file with header `x,y`.
inline std::vector<Vec2> read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw parse_error("empty curve file", 1);
    ++lineno;
    auto header = detail::split_csv_line(line);
    if (header.size() < 2 || header[0] != "x" || header[1] != "y")
        throw parse_error("expected header x,y", lineno);
    std::vector<Vec2> pts;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() < 2) throw parse_error("expected two cells", lineno);
        try {
            pts.push_back({std::stod(cells[0]), std::stod(cells[1])});
        } catch (const std::exception&) {
            throw parse_error("malformed number", lineno);
        }
    }
    return pts;
}

/// Unit vectors from a CSV file with header `nx,ny,nz`; an optional fourth
/// column `theta` carries per-tile vertex angles for the envelope bound.
inline std::pair<std::vector<Vec3>, std::vector<double>> read_normals_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw parse_error("empty normals file", 1);
    ++lineno;
    auto header = detail::split_csv_line(line);
    if (header.size() < 3 || header[0] != "nx" || header[1] != "ny" || header[2] != "nz")
        throw parse_error("expected header nx,ny,nz", lineno);
    const bool has_theta = header.size() >= 4 && header[3] == "theta";
    std::vector<Vec3> normals;
    std::vector<double> thetas;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() < 3) throw parse_error("expected three cells", lineno);
        try {
            normals.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2])});
            if (has_theta && cells.size() >= 4) thetas.push_back(std::stod(cells[3]));
        } catch (const std::exception&) {
            throw parse_error("malformed number", lineno);
        }
    }
    return {std::move(normals), std::move(thetas)};
}

}  // namespace polycurv
