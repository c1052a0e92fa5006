#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "polycurv/curvature.hpp"
#include "polycurv/errors.hpp"
#include "polycurv/grid.hpp"
#include "polycurv/lantern.hpp"
#include "polycurv/polyline.hpp"
#include "polycurv/triangulation.hpp"

namespace polycurv {

namespace detail {

/// Central differences inside, second-order one-sided on the boundary ring.
inline void grid_derivatives(const GridField& f, std::vector<double>& dx1,
                             std::vector<double>& dx2) {
    const int n = f.n;
    const double h = f.dx();
    dx1.assign(f.data.size(), 0.0);
    dx2.assign(f.data.size(), 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t id = static_cast<std::size_t>(j) * n + i;
            if (i == 0)
                dx1[id] = (-3 * f.at(0, j) + 4 * f.at(1, j) - f.at(2, j)) / (2.0 * h);
            else if (i == n - 1)
                dx1[id] = (3 * f.at(n - 1, j) - 4 * f.at(n - 2, j) + f.at(n - 3, j)) / (2.0 * h);
            else
                dx1[id] = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * h);
            if (j == 0)
                dx2[id] = (-3 * f.at(i, 0) + 4 * f.at(i, 1) - f.at(i, 2)) / (2.0 * h);
            else if (j == n - 1)
                dx2[id] = (3 * f.at(i, n - 1) - 4 * f.at(i, n - 2) + f.at(i, n - 3)) / (2.0 * h);
            else
                dx2[id] = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * h);
        }
}

/// Cell-averaged node integral over [0,1]^2, optionally restricted to cells
/// whose center satisfies `keep`.
template <class Keep>
inline double cell_integral(const GridField& g, Keep&& keep) {
    const int n = g.n;
    const double h = g.dx();
    double s = 0.0;
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            const Vec2 center{(i + 0.5) * h, (j + 0.5) * h};
            if (!keep(center)) continue;
            s += 0.25 * (g.at(i, j) + g.at(i + 1, j) + g.at(i, j + 1) + g.at(i + 1, j + 1));
        }
    return s * h * h;
}

}  // namespace detail

/// Densities |xi^(0)|, |xi^(1)|, |xi^(2)| of the Gauss-graph stratification on
/// the grid nodes, with their integrals and the determinant grids mu^j.
struct GridEnergyReport {
    double area;
    double f1;
    double f2;
    GridField xi0;
    GridField xi1;
    GridField xi2;
    std::array<GridField, 3> mu;

    double f2_in_disk(const Vec2& center, double radius) const {
        return detail::cell_integral(
            xi2, [&](const Vec2& c) { return (c - center).norm() < radius; });
    }

    double f1_in_disk(const Vec2& center, double radius) const {
        return detail::cell_integral(
            xi1, [&](const Vec2& c) { return (c - center).norm() < radius; });
    }
};

inline GridEnergyReport grid_energy_report(const GridField& u) {
    const int n = u.n;
    std::vector<double> ux, uy;
    detail::grid_derivatives(u, ux, uy);

    std::array<std::vector<double>, 3> nu;
    for (auto& c : nu) c.resize(u.data.size());
    for (std::size_t id = 0; id < u.data.size(); ++id) {
        const double g = 1.0 + ux[id] * ux[id] + uy[id] * uy[id];
        const double s = std::sqrt(g);
        nu[0][id] = -ux[id] / s;
        nu[1][id] = -uy[id] / s;
        nu[2][id] = 1.0 / s;
    }

    std::array<std::vector<double>, 3> nux, nuy;
    for (int j = 0; j < 3; ++j)
        detail::grid_derivatives(GridField(n, nu[j]), nux[j], nuy[j]);

    std::vector<double> x0(u.data.size()), x1(u.data.size()), x2(u.data.size());
    std::array<std::vector<double>, 3> mu;
    for (auto& c : mu) c.resize(u.data.size());
    for (std::size_t id = 0; id < u.data.size(); ++id) {
        const double g = 1.0 + ux[id] * ux[id] + uy[id] * uy[id];
        x0[id] = std::sqrt(g);
        double gradnu2 = 0.0, musq = 0.0;
        for (int j = 0; j < 3; ++j) {
            gradnu2 += nux[j][id] * nux[j][id] + nuy[j][id] * nuy[j][id];
            mu[j][id] = ux[id] * nuy[j][id] - uy[id] * nux[j][id];
            musq += mu[j][id] * mu[j][id];
        }
        x1[id] = std::sqrt(gradnu2 + musq);
        double minors = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                const double det = nux[a][id] * nuy[b][id] - nuy[a][id] * nux[b][id];
                minors += det * det;
            }
        x2[id] = std::sqrt(minors);
    }

    auto all = [](const Vec2&) { return true; };
    GridField gx0(n, std::move(x0)), gx1(n, std::move(x1)), gx2(n, std::move(x2));
    const double A = detail::cell_integral(gx0, all);
    const double F1 = detail::cell_integral(gx1, all);
    const double F2 = detail::cell_integral(gx2, all);
    return GridEnergyReport{A,
                            F1,
                            F2,
                            std::move(gx0),
                            std::move(gx1),
                            std::move(gx2),
                            {GridField(n, std::move(mu[0])), GridField(n, std::move(mu[1])),
                             GridField(n, std::move(mu[2]))}};
}

struct SlicingReport {
    double lhs = 0.0;  // integral over rows of the row-curve total curvature
    double rhs = 0.0;  // A + F1
    bool ok = false;
};

/// Row-sliced total curvature against A + F1 (trapezoid over the row index).
inline SlicingReport slicing_tc_check(const GridField& u) {
    const int n = u.n;
    const double h = u.dx();
    std::vector<double> tc_row(n, 0.0);
    for (int j = 0; j < n; ++j) {
        std::vector<Vec2> verts(n);
        for (int i = 0; i < n; ++i) verts[i] = {i * h, u.at(i, j)};
        tc_row[j] = curve_report(PolygonalCurve(std::move(verts), false)).tc;
    }
    SlicingReport rep;
    for (int j = 0; j + 1 < n; ++j) rep.lhs += 0.5 * (tc_row[j] + tc_row[j + 1]) * h;
    const GridEnergyReport e = grid_energy_report(u);
    rep.rhs = e.area + e.f1;
    rep.ok = rep.lhs <= rep.rhs * (1.0 + 1e-6);
    return rep;
}

// ---------------------------------------------------------------------------
// fixtures

/// Compact square pyramid: flat outside [1/4,3/4]^2, apex slope/4 at center.
inline GraphSurface pyramid_graph_surface(double slope = 1.0) {
    std::vector<Vec2> pts{{0, 0},          {1, 0},          {1, 1},          {0, 1},
                          {0.25, 0.25},    {0.75, 0.25},    {0.75, 0.75},    {0.25, 0.75},
                          {0.5, 0.5}};
    std::vector<std::array<int, 3>> tris{{0, 1, 5}, {0, 5, 4}, {1, 2, 6}, {1, 6, 5},
                                         {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7},
                                         {4, 5, 8}, {5, 6, 8}, {6, 7, 8}, {7, 4, 8}};
    std::vector<double> heights(9, 0.0);
    heights[8] = slope * 0.25;
    return GraphSurface(Triangulation2D(std::move(pts), std::move(tris)), std::move(heights));
}

inline double pyramid_value(const Vec2& p, double slope = 1.0) {
    const double d = std::max(std::abs(p.x - 0.5), std::abs(p.y - 0.5));
    return slope * std::max(0.0, 0.25 - d);
}

/// Ridge profile constant in x2: flat, up, down, flat.
inline GraphSurface roof_graph_surface(double slope = 1.0) {
    std::vector<Vec2> pts;
    const double xs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int r = 0; r < 2; ++r)
        for (double x : xs) pts.push_back({x, static_cast<double>(r)});
    std::vector<std::array<int, 3>> tris;
    for (int c = 0; c < 4; ++c) {
        tris.push_back({c, c + 1, c + 6});
        tris.push_back({c, c + 6, c + 5});
    }
    std::vector<double> heights{0, 0, slope * 0.25, 0, 0, 0, 0, slope * 0.25, 0, 0};
    return GraphSurface(Triangulation2D(std::move(pts), std::move(tris)), std::move(heights));
}

inline double roof_value(const Vec2& p, double slope = 1.0) {
    return slope * std::max(0.0, 0.25 - std::abs(p.x - 0.5));
}

inline double paraboloid_value(const Vec2& p) { return 0.5 * (p.x * p.x + p.y * p.y); }

/// A lantern vertex star turned into a graph: radial direction up, the six
/// sector planes continued as a polyhedral cone, clamped far from the vertex.
struct LanternPatch {
    std::array<Vec2, 6> sector_gradients{};
    std::array<double, 6> sector_starts{};  // sector start angles, sorted
    double scale = 0.22;
    double clamp_radius = 0.9;  // in star units
    double envelope_area = 0.0;
    double defect = 0.0;

    double value(const Vec2& p) const {
        const Vec2 w = (p - Vec2{0.5, 0.5}) / scale;
        const double r = std::min(w.norm(), clamp_radius);
        if (r == 0.0) return 0.0;
        const double ang = std::atan2(w.y, w.x);
        int sec = 5;
        for (int t = 0; t < 5; ++t)
            if (ang >= sector_starts[t] && ang < sector_starts[t + 1]) sec = t;
        if (ang < sector_starts[0]) sec = 5;
        const Vec2 dir{std::cos(ang), std::sin(ang)};
        return scale * r * sector_gradients[sec].dot(dir);
    }
};

inline LanternPatch make_lantern_patch(const LanternParams& p, double scale = 0.22,
                                       double clamp_radius = 0.9) {
    p.validate();
    const double a = p.alpha();
    const double q = p.height / p.n;
    // star neighbors in the (tangential, vertical) chart, heights radial - R
    const std::array<Vec2, 6> nb{{{-std::sin(a) * p.radius, -q},
                                  {std::sin(a) * p.radius, -q},
                                  {-std::sin(2 * a) * p.radius, 0.0},
                                  {std::sin(2 * a) * p.radius, 0.0},
                                  {-std::sin(a) * p.radius, q},
                                  {std::sin(a) * p.radius, q}}};
    std::array<double, 6> z{};
    for (int i = 0; i < 6; ++i) {
        const double c = (i == 2 || i == 3) ? std::cos(2 * a) : std::cos(a);
        z[i] = p.radius * (c - 1.0);
    }
    std::array<int, 6> order{0, 1, 2, 3, 4, 5};
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return std::atan2(nb[i].y, nb[i].x) < std::atan2(nb[j].y, nb[j].x);
    });

    LanternPatch patch;
    patch.scale = scale;
    patch.clamp_radius = clamp_radius;
    double angle_sum = 0.0;
    for (int t = 0; t < 6; ++t) {
        const int i = order[t], j = order[(t + 1) % 6];
        const Vec2 pi = nb[i], pj = nb[j];
        const double det = pi.cross(pj);
        patch.sector_gradients[t] = {(z[i] * pj.y - z[j] * pi.y) / det,
                                     (pi.x * z[j] - pj.x * z[i]) / det};
        patch.sector_starts[t] = std::atan2(pi.y, pi.x);
        const Vec3 u1{pi.x, pi.y, z[i]}, u2{pj.x, pj.y, z[j]};
        angle_sum += angle_between(u1, u2);
    }
    patch.defect = 2.0 * kPi - angle_sum;

    std::vector<UnitVector3> normals;
    for (const Vec2& g : patch.sector_gradients)
        normals.emplace_back(Vec3{-g.x, -g.y, 1.0});
    patch.envelope_area = spherical_polygon_area(geodesic_envelope(normals));
    return patch;
}

// ---------------------------------------------------------------------------
// convergence check

struct ConvergenceRow {
    double eps = 0.0;
    double area = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double area_target = 0.0;      // A(P)
    double f1_target = 0.0;        // E~_H(P)
    double f1_pi_half_bound = 0.0; // (pi/2) E_H(P)
    double e_k = 0.0;              // E_K(P)
    double f2_over_e_k = 0.0;      // measured C for convex lifts, 0 otherwise
};

namespace detail {
inline double segment_boundary_distance(const Vec2& a, const Vec2& b) {
    auto pt = [](const Vec2& p) {
        return std::min(std::min(p.x, 1.0 - p.x), std::min(p.y, 1.0 - p.y));
    };
    // distance to the boundary is concave along the segment
    return std::min(pt(a), pt(b));
}
}  // namespace detail

/// Mollify the inscribed lift of v at a fixed resolution for a decreasing
/// sequence of radii; the grid energies approach the polyhedral ones.
inline ConvergenceTable smoothing_convergence_check(const GraphSurface& v, int grid_n,
                                                    const std::vector<double>& eps_multiples) {
    if (eps_multiples.size() < 1) throw invalid_argument_error("need at least one radius");
    for (std::size_t i = 0; i + 1 < eps_multiples.size(); ++i)
        if (!(eps_multiples[i] > eps_multiples[i + 1]))
            throw invalid_argument_error("radii must decrease");

    const double dx = 1.0 / (grid_n - 1);
    const double eps_max = eps_multiples.front() * dx;
    const TriangulatedSurface3D lift = v.lift();
    for (std::size_t e = 0; e < lift.edges.size(); ++e) {
        const Edge3D& ed = lift.edges[e];
        if (!ed.interior() || dihedral_angle(lift, ed) <= 1e-9) continue;
        const Vec2 a = v.triangulation.points[ed.a];
        const Vec2 b = v.triangulation.points[ed.b];
        if (detail::segment_boundary_distance(a, b) <= 2.0 * eps_max)
            throw precondition_error("bent edge within 2 eps of the boundary");
    }

    const EnergyReport pr = energy_report(lift);
    ConvergenceTable table;
    table.area_target = pr.area;
    table.f1_target = pr.e_h_tilde;
    table.f1_pi_half_bound = kPi / 2.0 * pr.e_h;
    table.e_k = pr.e_k;

    const GridField base = GridField::sample(grid_n, [&](Vec2 p) { return v.evaluate(p); });
    for (double mult : eps_multiples) {
        const GridField u = mollify(base, MollifierSpec(mult * dx));
        const GridEnergyReport rep = grid_energy_report(u);
        table.rows.push_back({mult * dx, rep.area, rep.f1, rep.f2});
    }
    if (pr.e_k > kParabolicTol)
        table.f2_over_e_k = table.rows.back().f2 / pr.e_k;
    return table;
}

}  // namespace polycurv
