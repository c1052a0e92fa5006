#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "polycurv/curvature.hpp"
#include "polycurv/errors.hpp"
#include "polycurv/triangulation.hpp"

namespace polycurv {

/// Per-triangle constant fields sigma^j = nu^j (-d2 u, d1 u), j = 1,2,3.
struct SigmaField {
    std::vector<std::array<Vec2, 3>> sigma;  // [triangle][j]
};

inline SigmaField sigma_fields(const GraphSurface& g) {
    SigmaField f;
    f.sigma.resize(g.triangulation.triangles.size());
    for (std::size_t t = 0; t < f.sigma.size(); ++t) {
        const Vec2 grad = g.gradient(static_cast<int>(t));
        const Vec3 nu = g.normal(static_cast<int>(t));
        const Vec2 rot{-grad.y, grad.x};
        f.sigma[t] = {rot * nu.x, rot * nu.y, rot * nu.z};
    }
    return f;
}

struct EdgeMeasureRecord {
    int edge_id = -1;
    double length2d = 0.0;
    double length3d = 0.0;
    double theta = 0.0;
    Vec2 edge_normal;       // unit planar normal of the edge
    std::array<double, 3> nu_jump{};     // jump of nu^j across the edge
    std::array<double, 3> flux_jump{};   // jump of sigma^j . n_e
    double mass = 0.0;
};

namespace detail {
inline EdgeMeasureRecord edge_measure_impl(const GraphSurface& g, const SigmaField& f,
                                           int edge_index) {
    const Edge2D& e = g.triangulation.edges.at(edge_index);
    if (!e.interior()) throw boundary_error("edge measure undefined on a boundary edge");

    EdgeMeasureRecord r;
    r.edge_id = edge_index;
    const Vec2 pa = g.triangulation.points[e.a];
    const Vec2 pb = g.triangulation.points[e.b];
    r.length2d = (pb - pa).norm();
    // lower-to-higher index direction, rotated 90 degrees counterclockwise
    r.edge_normal = (pb - pa).normalized().perp_ccw();

    const Vec3 nu1 = g.normal(e.t1), nu2 = g.normal(e.t2);
    const std::array<double, 3> dn{nu2.x - nu1.x, nu2.y - nu1.y, nu2.z - nu1.z};
    double sq = 0.0;
    for (int j = 0; j < 3; ++j) {
        r.nu_jump[j] = dn[j];
        r.flux_jump[j] = (f.sigma[e.t2][j] - f.sigma[e.t1][j]).dot(r.edge_normal);
        sq += dn[j] * dn[j] + r.flux_jump[j] * r.flux_jump[j];
    }
    r.mass = r.length2d * std::sqrt(sq);

    const double dz = g.heights[e.b] - g.heights[e.a];
    r.length3d = std::sqrt(r.length2d * r.length2d + dz * dz);
    r.theta = std::atan2(nu1.cross(nu2).norm(), nu1.dot(nu2));
    return r;
}
}  // namespace detail

/// Variation of gamma^j = (D nu^j, DIV sigma^j) on one interior edge: the
/// jumps against the edge normal, Euclidean over all nine components, times
/// the planar edge length.
inline EdgeMeasureRecord edge_measure(const GraphSurface& g, int edge_index) {
    return detail::edge_measure_impl(g, sigma_fields(g), edge_index);
}

inline std::vector<EdgeMeasureRecord> edge_measures(const GraphSurface& g) {
    const SigmaField f = sigma_fields(g);
    std::vector<EdgeMeasureRecord> out;
    for (int i = 0; i < static_cast<int>(g.triangulation.edges.size()); ++i)
        if (g.triangulation.edges[i].interior())
            out.push_back(detail::edge_measure_impl(g, f, i));
    return out;
}

/// Total variation over the 1-skeleton; equals E_H of the lifted surface.
inline double total_mass(const GraphSurface& g) {
    double s = 0.0;
    for (const auto& r : edge_measures(g)) s += r.mass;
    return s;
}

struct TotalMassReport {
    double mass = 0.0;
    double e_h = 0.0;
    double rel_err = 0.0;
};

inline TotalMassReport total_mass_report(const GraphSurface& g) {
    TotalMassReport rep;
    rep.mass = total_mass(g);
    rep.e_h = energy_report(g.lift()).e_h;
    const double denom = std::max({std::abs(rep.mass), std::abs(rep.e_h), 1e-300});
    rep.rel_err = std::abs(rep.mass - rep.e_h) / denom;
    return rep;
}

/// Pointwise determinant densities mu^j = det(grad u; grad nu^j). The unit
/// normal is constant on every triangle of a polyhedral lift, so all mu^j
/// vanish: the measure has no absolutely continuous part.
inline std::vector<std::array<double, 3>> mu_density(const GraphSurface& g) {
    std::vector<std::array<double, 3>> out(g.triangulation.triangles.size());
    for (auto& a : out) a = {0.0, 0.0, 0.0};
    return out;
}

}  // namespace polycurv
