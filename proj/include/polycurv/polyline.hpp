#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/geometry.hpp"

namespace polycurv {

/// Planar polygonal curve. For a closed curve the first and last vertices are
/// distinct and the closing edge is implicit.
struct PolygonalCurve {
    std::vector<Vec2> vertices;
    bool closed = false;

    PolygonalCurve(std::vector<Vec2> verts, bool closed_ = false)
        : vertices(std::move(verts)), closed(closed_) {
        if (vertices.size() < 2)
            throw invalid_argument_error("polygonal curve needs at least 2 vertices");
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (vertices[i] == vertices[i + 1])
                throw invalid_argument_error("degenerate edge: consecutive vertices coincide");
        if (closed && vertices.front() == vertices.back())
            throw invalid_argument_error("closed curve must not repeat the first vertex");
    }

    std::size_t edge_count() const { return vertices.size() - 1 + (closed ? 1 : 0); }

    Vec2 edge(std::size_t i) const {
        const std::size_t n = vertices.size();
        return vertices[(i + 1) % n] - vertices[i % n];
    }

    double length() const {
        double s = 0.0;
        for (std::size_t i = 0; i < edge_count(); ++i) s += edge(i).norm();
        return s;
    }
};

struct CurveCurvatureReport {
    double length = 0.0;
    std::vector<double> turning_angles;
    double tc = 0.0;        // sum of turning angles
    double tc_star = 0.0;   // sum of 2 sin(theta/2)
    double max_turning = 0.0;
};

namespace detail {
inline double turning_angle(const Vec2& e1, const Vec2& e2) {
    const double c = e1.cross(e2);
    const double d = e1.dot(e2);
    // exact zero for exactly repeated directions, so TC stays additive under
    // vertex insertion; no tolerance snapping otherwise
    if (c == 0.0) return d >= 0.0 ? 0.0 : kPi;
    return std::acos(clamp_unit(d / (e1.norm() * e2.norm())));
}
}  // namespace detail

/// Turning angles at the interior junctions, in order; for a closed curve the
/// angle between the last and first edges is appended.
inline std::vector<double> turning_angles(const PolygonalCurve& c) {
    const std::size_t ne = c.edge_count();
    std::vector<double> out;
    if (!c.closed) {
        out.reserve(ne - 1);
        for (std::size_t i = 0; i + 1 < ne; ++i)
            out.push_back(detail::turning_angle(c.edge(i), c.edge(i + 1)));
    } else {
        out.reserve(ne);
        for (std::size_t i = 1; i < ne; ++i)
            out.push_back(detail::turning_angle(c.edge(i - 1), c.edge(i)));
        out.push_back(detail::turning_angle(c.edge(ne - 1), c.edge(0)));
    }
    return out;
}

inline CurveCurvatureReport curve_report(const PolygonalCurve& c) {
    CurveCurvatureReport r;
    r.length = c.length();
    r.turning_angles = turning_angles(c);
    for (double t : r.turning_angles) {
        r.tc += t;
        r.tc_star += 2.0 * std::sin(t / 2.0);
        r.max_turning = std::max(r.max_turning, t);
    }
    return r;
}

inline double total_curvature(const PolygonalCurve& c) { return curve_report(c).tc; }
inline double curvature_force(const PolygonalCurve& c) { return curve_report(c).tc_star; }

/// Total variation of the piecewise-constant unit normal across junctions.
/// Coincides with the curvature force; kept as a separate code path.
inline double polygonal_normal_variation(const PolygonalCurve& c) {
    const std::size_t ne = c.edge_count();
    std::vector<Vec2> nu(ne);
    for (std::size_t i = 0; i < ne; ++i) nu[i] = c.edge(i).normalized().perp_cw();
    double var = 0.0;
    for (std::size_t i = 0; i + 1 < ne; ++i) var += (nu[i + 1] - nu[i]).norm();
    if (c.closed) var += (nu[0] - nu[ne - 1]).norm();
    return var;
}

/// Polygonal inscribed in c at the given parameter values.
inline PolygonalCurve inscribe_curve(const std::function<Vec2(double)>& c,
                                     const std::vector<double>& partition,
                                     bool closed = false) {
    if (partition.size() < 2)
        throw invalid_argument_error("partition needs at least 2 parameters");
    for (std::size_t i = 0; i + 1 < partition.size(); ++i)
        if (!(partition[i] < partition[i + 1]))
            throw invalid_argument_error("partition must be strictly increasing");
    if (partition.front() < 0.0 || partition.back() > 1.0)
        throw invalid_argument_error("partition must lie in [0,1]");
    std::vector<Vec2> verts;
    verts.reserve(partition.size());
    for (double t : partition) verts.push_back(c(t));
    return PolygonalCurve(std::move(verts), closed);
}

}  // namespace polycurv
