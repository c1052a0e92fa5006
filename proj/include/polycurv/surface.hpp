#pragma once

#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/geometry.hpp"

namespace polycurv {

struct Edge3D {
    int a = -1;
    int b = -1;   // a < b
    int t1 = -1;
    int t2 = -1;  // -1 when the edge is on the boundary

    bool interior() const { return t2 >= 0; }
};

/// Oriented triangulated surface in 3-space. Validated at construction:
/// every directed edge appears once and every undirected edge at most twice.
struct TriangulatedSurface3D {
    std::vector<Vec3> points3;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Edge3D> edges;                          // derived
    std::vector<std::vector<int>> vertex_triangles;     // incident triangles per vertex
    std::vector<bool> boundary_vertex;

    TriangulatedSurface3D(std::vector<Vec3> pts, std::vector<std::array<int, 3>> tris)
        : points3(std::move(pts)), triangles(std::move(tris)) {
        build_and_check();
    }

    Vec3 normal(int t) const {
        const auto& tr = triangles[t];
        return (points3[tr[1]] - points3[tr[0]]).cross(points3[tr[2]] - points3[tr[0]]).normalized();
    }

    double area(int t) const {
        const auto& tr = triangles[t];
        return 0.5 * (points3[tr[1]] - points3[tr[0]]).cross(points3[tr[2]] - points3[tr[0]]).norm();
    }

    double total_area() const {
        double s = 0.0;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t) s += area(t);
        return s;
    }

    double edge_length(const Edge3D& e) const { return (points3[e.b] - points3[e.a]).norm(); }

    /// Angle of triangle t at vertex v.
    double tile_angle(int t, int v) const {
        const auto& tr = triangles[t];
        int o1 = -1, o2 = -1;
        for (int i = 0; i < 3; ++i) {
            if (tr[i] == v) continue;
            (o1 < 0 ? o1 : o2) = tr[i];
        }
        if (o2 < 0) throw invalid_argument_error("vertex not in triangle");
        return angle_between(points3[o1] - points3[v], points3[o2] - points3[v]);
    }

    int num_vertices() const { return static_cast<int>(points3.size()); }

  private:
    void build_and_check() {
        const int np = num_vertices();
        vertex_triangles.assign(np, {});
        boundary_vertex.assign(np, false);
        std::map<std::pair<int, int>, int> undirected;
        std::map<std::pair<int, int>, int> directed;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
            const auto& tr = triangles[t];
            for (int v : tr)
                if (v < 0 || v >= np) throw invalid_argument_error("triangle index out of range");
            const Vec3 n = (points3[tr[1]] - points3[tr[0]]).cross(points3[tr[2]] - points3[tr[0]]);
            double scale = 0.0;
            for (int i = 0; i < 3; ++i)
                scale = std::max(scale, (points3[tr[(i + 1) % 3]] - points3[tr[i]]).norm2());
            if (n.norm() <= 1e-14 * scale)
                throw invalid_argument_error("degenerate triangle");
            for (int v : tr) vertex_triangles[v].push_back(t);
            for (int i = 0; i < 3; ++i) {
                const int a = tr[i], b = tr[(i + 1) % 3];
                if (directed.count({a, b}))
                    throw topology_error("directed edge repeated: inconsistent orientation");
                directed[{a, b}] = t;
                const auto key = std::minmax(a, b);
                auto it = undirected.find(key);
                if (it == undirected.end()) {
                    undirected[key] = static_cast<int>(edges.size());
                    edges.push_back({key.first, key.second, t, -1});
                } else {
                    Edge3D& e = edges[it->second];
                    if (e.t2 >= 0) throw topology_error("edge shared by more than two triangles");
                    e.t2 = t;
                }
            }
        }
        for (const Edge3D& e : edges)
            if (!e.interior()) {
                boundary_vertex[e.a] = true;
                boundary_vertex[e.b] = true;
            }
    }
};

/// Incident triangles of an interior vertex in consistent cyclic order.
inline std::vector<int> vertex_star(const TriangulatedSurface3D& s, int v) {
    if (v < 0 || v >= s.num_vertices()) throw invalid_argument_error("vertex index out of range");
    if (s.boundary_vertex[v]) throw boundary_error("vertex star undefined on the boundary");
    const auto& inc = s.vertex_triangles[v];
    if (inc.empty()) throw topology_error("isolated vertex");

    // walk across the edge (v, next) of each triangle (v, prev, next)
    std::map<std::pair<int, int>, int> across;  // directed edge -> triangle
    for (int t : inc) {
        const auto& tr = s.triangles[t];
        for (int i = 0; i < 3; ++i)
            across[{tr[i], tr[(i + 1) % 3]}] = t;
    }
    auto next_of = [&](int t) {
        const auto& tr = s.triangles[t];
        int i = 0;
        while (tr[i] != v) ++i;
        const int nxt = tr[(i + 1) % 3];
        auto it = across.find({nxt, v});
        if (it == across.end()) throw topology_error("open link at interior vertex");
        return it->second;
    };

    std::vector<int> cycle{inc[0]};
    for (int t = next_of(inc[0]); t != inc[0]; t = next_of(t)) {
        cycle.push_back(t);
        if (cycle.size() > inc.size()) throw topology_error("non-manifold vertex link");
    }
    if (cycle.size() != inc.size()) throw topology_error("non-manifold vertex link");
    return cycle;
}

}  // namespace polycurv
