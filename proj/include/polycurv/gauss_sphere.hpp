#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polycurv/curvature.hpp"
#include "polycurv/errors.hpp"
#include "polycurv/geometry.hpp"
#include "polycurv/surface.hpp"

namespace polycurv {

/// Point on the unit sphere; normalized at construction.
struct UnitVector3 {
    Vec3 v;

    UnitVector3() : v{0, 0, 1} {}
    explicit UnitVector3(const Vec3& w) {
        const double n = w.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw invalid_argument_error("cannot normalize zero or non-finite vector");
        v = w / n;
    }

    operator const Vec3&() const { return v; }
    double x() const { return v.x; }
    double y() const { return v.y; }
    double z() const { return v.z; }
};

struct SphericalPolygon {
    std::vector<UnitVector3> vertices;
    bool convex = false;
};

/// Lower bound on the z-component of normals admitted to the gnomonic chart.
inline constexpr double kHemisphereDelta = 1e-6;
inline constexpr double kHullCollinearTol = 1e-12;

/// Vertex angle of the polygon at vertex j: angle between the great-circle
/// tangents towards the two neighbors, taken in the tangent plane at N_j.
inline std::vector<double> spherical_vertex_angles(const SphericalPolygon& poly) {
    const std::size_t k = poly.vertices.size();
    std::vector<double> gamma(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        const Vec3& b = poly.vertices[j];
        const Vec3& a = poly.vertices[(j + k - 1) % k];
        const Vec3& c = poly.vertices[(j + 1) % k];
        const Vec3 t1 = a - b * a.dot(b);
        const Vec3 t2 = c - b * c.dot(b);
        gamma[j] = angle_between(t1, t2);
    }
    return gamma;
}

namespace detail {
inline bool on_common_geodesic(const std::vector<UnitVector3>& vs) {
    // find an axis from the first independent pair, then test the rest
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const Vec3 axis = vs[0].v.cross(vs[i].v);
        if (axis.norm() > 1e-9) {
            for (const auto& w : vs)
                if (std::abs(axis.normalized().dot(w.v)) > 1e-12) return false;
            return true;
        }
    }
    return true;  // all vertices (anti)parallel
}
}  // namespace detail

/// Area of a geodesically convex polygon by spherical excess,
/// sum gamma_j - (k-2) pi. Degenerate inputs give 0.
inline double spherical_polygon_area(const SphericalPolygon& poly) {
    const std::size_t k = poly.vertices.size();
    if (k <= 2) return 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const Vec3 sum = poly.vertices[j].v + poly.vertices[(j + 1) % k].v;
        if (sum.norm() < 1e-9)
            throw geodesic_error("consecutive antipodal vertices: geodesic undefined");
    }
    if (detail::on_common_geodesic(poly.vertices)) return 0.0;
    const auto gamma = spherical_vertex_angles(poly);
    double s = 0.0;
    for (double g : gamma) s += g;
    return s - static_cast<double>(k - 2) * kPi;
}

/// Geodesically convex envelope of upper-hemisphere normals. Geodesics are
/// straight lines in the gnomonic chart p -> (p.x/p.z, p.y/p.z), so the
/// envelope is the planar convex hull mapped back to the sphere.
inline SphericalPolygon geodesic_envelope(const std::vector<UnitVector3>& normals) {
    if (normals.empty()) throw invalid_argument_error("no normals given");
    std::vector<Vec2> proj;
    proj.reserve(normals.size());
    for (const auto& n : normals) {
        if (n.z() < kHemisphereDelta)
            throw hemisphere_error("normal outside the open upper hemisphere");
        proj.push_back({n.x() / n.z(), n.y() / n.z()});
    }

    std::sort(proj.begin(), proj.end(),
              [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    proj.erase(std::unique(proj.begin(), proj.end()), proj.end());

    auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        const Vec2 u = a - o, w = b - o;
        return u.cross(w) <= kHullCollinearTol * std::max(1.0, u.norm() * w.norm());
    };
    std::vector<Vec2> hull;
    if (proj.size() >= 3) {
        std::vector<Vec2> lower, upper;
        for (const Vec2& p : proj) {
            while (lower.size() >= 2 && turn(lower[lower.size() - 2], lower.back(), p))
                lower.pop_back();
            lower.push_back(p);
        }
        for (auto it = proj.rbegin(); it != proj.rend(); ++it) {
            while (upper.size() >= 2 && turn(upper[upper.size() - 2], upper.back(), *it))
                upper.pop_back();
            upper.push_back(*it);
        }
        lower.pop_back();
        upper.pop_back();
        hull = std::move(lower);
        hull.insert(hull.end(), upper.begin(), upper.end());
    } else {
        hull = proj;
    }

    SphericalPolygon out;
    out.convex = true;
    for (const Vec2& p : hull) out.vertices.emplace_back(Vec3{p.x, p.y, 1.0});
    return out;
}

struct EnvelopeReport {
    SphericalPolygon polygon;
    double area = 0.0;
    std::vector<double> gamma;
    double theta_sum = 0.0;  // 3D tile angles at the vertex
    double bound = 0.0;      // 2 pi * theta_sum
    bool ok = false;         // area <= bound
};

inline std::vector<UnitVector3> star_normals(const TriangulatedSurface3D& s, int v) {
    std::vector<UnitVector3> normals;
    for (int t : vertex_star(s, v)) normals.emplace_back(s.normal(t));
    return normals;
}

/// Envelope area of the star normals against the 2 pi * (angle sum) bound.
inline EnvelopeReport envelope_bound_check(const TriangulatedSurface3D& s, int v) {
    EnvelopeReport rep;
    rep.polygon = geodesic_envelope(star_normals(s, v));
    rep.area = spherical_polygon_area(rep.polygon);
    rep.gamma = rep.polygon.vertices.size() >= 3 ? spherical_vertex_angles(rep.polygon)
                                                 : std::vector<double>{};
    for (int t : s.vertex_triangles[v]) rep.theta_sum += s.tile_angle(t, v);
    rep.bound = 2.0 * kPi * rep.theta_sum;
    rep.ok = rep.area <= rep.bound;
    return rep;
}

struct EllipticIdentityResult {
    double area = 0.0;
    double defect = 0.0;
    double abs_err = 0.0;
};

/// For an elliptic vertex the envelope area equals the angle defect.
inline EllipticIdentityResult elliptic_identity_check(const TriangulatedSurface3D& s, int v) {
    const VertexCurvatureRecord rec = angle_defect(s, v);
    if (rec.cls != VertexClass::elliptic)
        throw precondition_error("identity requires an elliptic vertex (defect > 0)");
    EllipticIdentityResult res;
    res.defect = rec.defect;
    res.area = spherical_polygon_area(geodesic_envelope(star_normals(s, v)));
    res.abs_err = std::abs(res.area - res.defect);
    return res;
}

}  // namespace polycurv
