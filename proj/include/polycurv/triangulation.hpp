#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/geometry.hpp"
#include "polycurv/surface.hpp"

namespace polycurv {

struct Edge2D {
    int a = -1;
    int b = -1;     // a < b
    int t1 = -1;
    int t2 = -1;    // -1 when the edge is on the boundary

    bool interior() const { return t2 >= 0; }
};

/// Conforming triangulation of a planar domain; triangles are CCW index triples.
struct Triangulation2D {
    std::vector<Vec2> points;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Edge2D> edges;  // derived

    Triangulation2D(std::vector<Vec2> pts, std::vector<std::array<int, 3>> tris)
        : points(std::move(pts)), triangles(std::move(tris)) {
        build_and_check();
    }

    double signed_area(int t) const {
        const auto& tr = triangles[t];
        const Vec2 u = points[tr[1]] - points[tr[0]];
        const Vec2 v = points[tr[2]] - points[tr[0]];
        return 0.5 * u.cross(v);
    }

    double area_sum() const {
        double s = 0.0;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t) s += signed_area(t);
        return s;
    }

    double diameter(int t) const {
        const auto& tr = triangles[t];
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            d = std::max(d, (points[tr[(i + 1) % 3]] - points[tr[i]]).norm());
        return d;
    }

    /// Supremum of the triangle diameters.
    double mesh() const {
        double m = 0.0;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
            m = std::max(m, diameter(t));
        return m;
    }

  private:
    void build_and_check() {
        const int np = static_cast<int>(points.size());
        std::map<std::pair<int, int>, int> undirected;
        std::map<std::pair<int, int>, int> directed;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
            for (int v : triangles[t])
                if (v < 0 || v >= np) throw invalid_argument_error("triangle index out of range");
            if (signed_area(t) <= 0.0)
                throw invalid_argument_error("triangle degenerate or not CCW");
            for (int i = 0; i < 3; ++i) {
                const int a = triangles[t][i], b = triangles[t][(i + 1) % 3];
                if (directed.count({a, b}))
                    throw topology_error("directed edge repeated: inconsistent orientation");
                directed[{a, b}] = t;
                const auto key = std::minmax(a, b);
                auto it = undirected.find(key);
                if (it == undirected.end()) {
                    undirected[key] = static_cast<int>(edges.size());
                    edges.push_back({key.first, key.second, t, -1});
                } else {
                    Edge2D& e = edges[it->second];
                    if (e.t2 >= 0) throw topology_error("edge shared by more than two triangles");
                    e.t2 = t;
                }
            }
        }
    }
};

/// Uniform triangulation of the unit square: (k+1)^2 points, 2k^2 triangles,
/// every cell split along the (+1,+1) diagonal.
inline Triangulation2D regular_grid_triangulation(int k) {
    if (k < 1) throw invalid_argument_error("grid refinement must be >= 1");
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(k + 1) * (k + 1));
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i <= k; ++i)
            pts.push_back({static_cast<double>(i) / k, static_cast<double>(j) / k});
    auto idx = [k](int i, int j) { return j * (k + 1) + i; };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(2) * k * k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            tris.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            tris.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
        }
    return Triangulation2D(std::move(pts), std::move(tris));
}

/// Piecewise-affine lift of heights prescribed on the 0-skeleton.
struct GraphSurface {
    Triangulation2D triangulation;
    std::vector<double> heights;

    GraphSurface(Triangulation2D tri, std::vector<double> h)
        : triangulation(std::move(tri)), heights(std::move(h)) {
        if (heights.size() != triangulation.points.size())
            throw invalid_argument_error("one height per triangulation point required");
        for (double v : heights)
            if (!std::isfinite(v)) throw invalid_argument_error("non-finite height sample");
    }

    /// Constant gradient of the affine interpolant on triangle t.
    Vec2 gradient(int t) const {
        const auto& tr = triangulation.triangles[t];
        const Vec2 p0 = triangulation.points[tr[0]];
        const Vec2 e1 = triangulation.points[tr[1]] - p0;
        const Vec2 e2 = triangulation.points[tr[2]] - p0;
        const double z1 = heights[tr[1]] - heights[tr[0]];
        const double z2 = heights[tr[2]] - heights[tr[0]];
        const double det = e1.cross(e2);
        return {(z1 * e2.y - z2 * e1.y) / det, (e1.x * z2 - e2.x * z1) / det};
    }

    /// Upward unit normal of the lifted triangle t.
    Vec3 normal(int t) const {
        const Vec2 g = gradient(t);
        const double s = std::sqrt(1.0 + g.norm2());
        return {-g.x / s, -g.y / s, 1.0 / s};
    }

    TriangulatedSurface3D lift() const {
        std::vector<Vec3> pts3(triangulation.points.size());
        for (std::size_t i = 0; i < pts3.size(); ++i)
            pts3[i] = {triangulation.points[i].x, triangulation.points[i].y, heights[i]};
        return TriangulatedSurface3D(std::move(pts3), triangulation.triangles);
    }

    /// Evaluate the interpolant; brute-force point location.
    double evaluate(const Vec2& p) const {
        for (int t = 0; t < static_cast<int>(triangulation.triangles.size()); ++t) {
            const auto& tr = triangulation.triangles[t];
            const Vec2 a = triangulation.points[tr[0]];
            const Vec2 b = triangulation.points[tr[1]];
            const Vec2 c = triangulation.points[tr[2]];
            const double d = (b - a).cross(c - a);
            const double w0 = (b - p).cross(c - p) / d;
            const double w1 = (c - p).cross(a - p) / d;
            const double w2 = (a - p).cross(b - p) / d;
            if (w0 >= -1e-12 && w1 >= -1e-12 && w2 >= -1e-12)
                return w0 * heights[tr[0]] + w1 * heights[tr[1]] + w2 * heights[tr[2]];
        }
        throw invalid_argument_error("point outside the triangulated domain");
    }
};

inline GraphSurface inscribe_graph(const std::function<double(Vec2)>& u, Triangulation2D tri) {
    std::vector<double> h(tri.points.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = u(tri.points[i]);
    return GraphSurface(std::move(tri), std::move(h));
}

/// True when the piecewise-affine lift is convex: the gradient jump across
/// every interior edge is monotone along the centroid direction.
inline bool locally_convex_lift(const GraphSurface& g, double tol = 0.0) {
    auto centroid = [&](int t) {
        const auto& tr = g.triangulation.triangles[t];
        return (g.triangulation.points[tr[0]] + g.triangulation.points[tr[1]] +
                g.triangulation.points[tr[2]]) /
               3.0;
    };
    for (const Edge2D& e : g.triangulation.edges) {
        if (!e.interior()) continue;
        const Vec2 dg = g.gradient(e.t2) - g.gradient(e.t1);
        const Vec2 dc = centroid(e.t2) - centroid(e.t1);
        if (dg.dot(dc) < -tol) return false;
    }
    return true;
}

}  // namespace polycurv
