#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "polycurv/curvature.hpp"
#include "polycurv/errors.hpp"
#include "polycurv/gauss_sphere.hpp"
#include "polycurv/surface.hpp"

namespace polycurv {

/// Schwarz-Peano lantern P_{m,n} inscribed in a cylinder of radius R and
/// height H: 2mn congruent isosceles triangles.
struct LanternParams {
    double radius = 1.0;
    double height = 1.0;
    int m = 4;  // even, >= 4: half the vertices per ring
    int n = 2;  // even, >= 2: strips

    void validate() const {
        if (!(radius > 0.0) || !(height > 0.0))
            throw invalid_argument_error("lantern radius and height must be positive");
        if (m < 4 || m % 2 != 0)
            throw invalid_argument_error("lantern m must be even and >= 4");
        if (n < 2 || n % 2 != 0)
            throw invalid_argument_error("lantern n must be even and >= 2");
    }

    double alpha() const { return kPi / m; }                                // half-step angle
    double basis() const { return 2.0 * radius * std::sin(alpha()); }       // b
    double sagitta() const {                                                // d
        const double s = std::sin(alpha() / 2.0);
        return 2.0 * radius * s * s;
    }
    double tri_height() const { return std::hypot(height / n, sagitta()); }  // h
    double lateral_side() const { return std::hypot(tri_height(), basis() / 2.0); }
    int interior_vertex_count() const { return m * (n - 1); }
};

/// Vertices at angles (2s + j mod 2) * pi/m on ring j; strips of alternating
/// up/down triangles, oriented outward. Top and bottom rings are boundary.
inline TriangulatedSurface3D build_lantern(const LanternParams& p) {
    p.validate();
    const double a = p.alpha();
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(p.m) * (p.n + 1));
    for (int j = 0; j <= p.n; ++j)
        for (int s = 0; s < p.m; ++s) {
            const double ang = (2 * s + (j % 2)) * a;
            pts.push_back({p.radius * std::cos(ang), p.radius * std::sin(ang),
                           p.height * j / p.n});
        }
    auto vid = [&](int j, int s) { return j * p.m + ((s % p.m) + p.m) % p.m; };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(2) * p.m * p.n);
    for (int j = 0; j < p.n; ++j)
        for (int s = 0; s < p.m; ++s) {
            if (j % 2 == 0) {
                tris.push_back({vid(j, s), vid(j, s + 1), vid(j + 1, s)});
                tris.push_back({vid(j + 1, s + 1), vid(j + 1, s), vid(j, s + 1)});
            } else {
                tris.push_back({vid(j, s), vid(j, s + 1), vid(j + 1, s + 1)});
                tris.push_back({vid(j + 1, s + 1), vid(j + 1, s), vid(j, s)});
            }
        }
    // outward orientation
    for (auto& t : tris) {
        const Vec3 nrm = (pts[t[1]] - pts[t[0]]).cross(pts[t[2]] - pts[t[0]]);
        const Vec3 cen = (pts[t[0]] + pts[t[1]] + pts[t[2]]) / 3.0;
        if (nrm.dot({cen.x, cen.y, 0.0}) < 0.0) std::swap(t[1], t[2]);
    }
    return TriangulatedSurface3D(std::move(pts), std::move(tris));
}

inline double closed_form_area(const LanternParams& p) {
    p.validate();
    return 2.0 * p.m * p.n * p.radius * std::sin(p.alpha()) * p.tri_height();
}

/// Dihedral across the horizontal edges where two triangle bases meet.
inline double lantern_base_dihedral(const LanternParams& p) {
    return 2.0 * std::atan(p.sagitta() / (p.height / p.n));
}

/// Dihedral across the slanted edges, from the exact normals of the two
/// adjacent triangles; valid past pi/2 where the arcsin form breaks down.
inline double lantern_lateral_dihedral(const LanternParams& p) {
    const double a = p.alpha();
    const double q = p.height / p.n;
    const double d = p.sagitta();
    const double y = q * std::sin(a) *
                     std::sqrt(q * q + 4.0 * p.radius * p.radius * std::sin(a / 2) * std::sin(a / 2));
    const double x = q * q * std::cos(a) - d * d;
    return std::atan2(y, x);
}

/// Printed simplification of the lateral dihedral, arcsin((H/n) sin(alpha)/h^2),
/// kept for comparison output only; its argument can exceed 1.
inline double lantern_lateral_dihedral_paper_asymptotic(const LanternParams& p) {
    const double h = p.tri_height();
    return std::asin(clamp_unit((p.height / p.n) * std::sin(p.alpha()) / (h * h)));
}

/// Base-edge mean curvature total: m(n-1) edges of length b, half angle each.
inline double closed_form_f1(const LanternParams& p) {
    p.validate();
    return 2.0 * p.m * (p.n - 1) * p.radius * std::sin(p.alpha()) *
           std::atan((p.n / p.height) * p.sagitta());
}

/// Lateral-edge mean curvature total: 2mn edges, exact dihedral, half angle.
inline double closed_form_f2(const LanternParams& p) {
    p.validate();
    return 2.0 * p.m * p.n * p.lateral_side() * lantern_lateral_dihedral(p) / 2.0;
}

struct LanternConsistencyReport {
    int base_edge_count = 0;     // expect m(n-1)
    int lateral_edge_count = 0;  // expect 2mn
    double base_sum = 0.0;       // mesh sum of L(e) theta_e / 2 over base edges
    double lateral_sum = 0.0;    // same over lateral edges
    double f1 = 0.0;
    double f2 = 0.0;
    double rel_err_f1 = 0.0;
    double rel_err_f2 = 0.0;
    double e_k = 0.0;            // sum of |defect| over interior vertices
    double max_abs_defect = 0.0;
};

/// Mesh bookkeeping against the closed forms: base (same-ring) and lateral
/// (cross-ring) interior edge sums must reproduce F1 and F2.
inline LanternConsistencyReport lantern_mean_curvature_consistency(const LanternParams& p) {
    const TriangulatedSurface3D s = build_lantern(p);
    LanternConsistencyReport rep;
    for (const Edge3D& e : s.edges) {
        if (!e.interior()) continue;
        const double contrib = s.edge_length(e) * dihedral_angle(s, e) / 2.0;
        if (e.a / p.m == e.b / p.m) {
            ++rep.base_edge_count;
            rep.base_sum += contrib;
        } else {
            ++rep.lateral_edge_count;
            rep.lateral_sum += contrib;
        }
    }
    rep.f1 = closed_form_f1(p);
    rep.f2 = closed_form_f2(p);
    rep.rel_err_f1 = std::abs(rep.base_sum - rep.f1) / std::max(rep.f1, 1e-300);
    rep.rel_err_f2 = std::abs(rep.lateral_sum - rep.f2) / std::max(rep.f2, 1e-300);
    for (const auto& vr : vertex_curvature_records(s)) {
        rep.e_k += std::abs(vr.defect);
        rep.max_abs_defect = std::max(rep.max_abs_defect, std::abs(vr.defect));
    }
    return rep;
}

/// Prism Q_n inscribed in the same cylinder; lateral faces triangulated with
/// `slices` rows (and a middle column, so faces can own interior vertices).
struct PrismParams {
    int n = 3;  // >= 3
    double radius = 1.0;
    double height = 1.0;
    int slices = 1;  // >= 1

    void validate() const {
        if (n < 3) throw invalid_argument_error("prism needs n >= 3");
        if (!(radius > 0.0) || !(height > 0.0))
            throw invalid_argument_error("prism radius and height must be positive");
        if (slices < 1) throw invalid_argument_error("prism needs slices >= 1");
    }

    double edge() const { return 2.0 * radius * std::sin(kPi / n); }
};

inline TriangulatedSurface3D build_prism(const PrismParams& p) {
    p.validate();
    // vertices: per face column c in {0 (seam), 1 (midline)}, per level l
    const int cols = 2 * p.n;  // seam_0, mid_0, seam_1, mid_1, ...
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(cols) * (p.slices + 1));
    std::vector<Vec3> ring(cols);
    for (int f = 0; f < p.n; ++f) {
        const double a0 = 2.0 * kPi * f / p.n;
        const double a1 = 2.0 * kPi * (f + 1) / p.n;
        const Vec3 s0{p.radius * std::cos(a0), p.radius * std::sin(a0), 0.0};
        const Vec3 s1{p.radius * std::cos(a1), p.radius * std::sin(a1), 0.0};
        ring[2 * f] = s0;
        ring[2 * f + 1] = (s0 + s1) / 2.0;  // chord midpoint: stays on the face plane
    }
    for (int l = 0; l <= p.slices; ++l)
        for (int c = 0; c < cols; ++c)
            pts.push_back({ring[c].x, ring[c].y, p.height * l / p.slices});
    auto vid = [&](int l, int c) { return l * cols + ((c % cols) + cols) % cols; };
    std::vector<std::array<int, 3>> tris;
    for (int l = 0; l < p.slices; ++l)
        for (int c = 0; c < cols; ++c) {
            tris.push_back({vid(l, c), vid(l, c + 1), vid(l + 1, c + 1)});
            tris.push_back({vid(l, c), vid(l + 1, c + 1), vid(l + 1, c)});
        }
    for (auto& t : tris) {
        const Vec3 nrm = (pts[t[1]] - pts[t[0]]).cross(pts[t[2]] - pts[t[0]]);
        const Vec3 cen = (pts[t[0]] + pts[t[1]] + pts[t[2]]) / 3.0;
        if (nrm.dot({cen.x, cen.y, 0.0}) < 0.0) std::swap(t[1], t[2]);
    }
    return TriangulatedSurface3D(std::move(pts), std::move(tris));
}

struct PrismReport {
    double lateral_area = 0.0;         // mesh sum; n * 2R sin(pi/n) * H exactly
    double e_h_tilde_half = 0.0;       // expect pi * H
    double max_abs_defect = 0.0;       // expect 0
    double max_envelope_area = 0.0;    // expect 0
    int interior_vertex_count = 0;
};

inline PrismReport prism_report(const PrismParams& p) {
    const TriangulatedSurface3D s = build_prism(p);
    PrismReport rep;
    rep.lateral_area = s.total_area();
    rep.e_h_tilde_half = energy_report(s).e_h_tilde_half();
    for (int v = 0; v < s.num_vertices(); ++v) {
        if (s.boundary_vertex[v]) continue;
        ++rep.interior_vertex_count;
        rep.max_abs_defect = std::max(rep.max_abs_defect, std::abs(angle_defect(s, v).defect));
        // envelope area in the vertex frame: rotate the star normals so the
        // mean direction points up before projecting
        std::vector<UnitVector3> normals = star_normals(s, v);
        Vec3 mean{0, 0, 0};
        for (const auto& nv : normals) mean = mean + nv.v;
        const Mat3 rot = Mat3::rotation_between(mean.normalized(), {0, 0, 1});
        for (auto& nv : normals) nv = UnitVector3(rot.apply(nv.v));
        const double area = spherical_polygon_area(geodesic_envelope(normals));
        rep.max_envelope_area = std::max(rep.max_envelope_area, area);
    }
    return rep;
}

/// Exact star normals of an interior lantern vertex in cyclic order, starting
/// with the apex triangle below the vertex, for a vertex at angle 0.
inline std::array<Vec3, 6> lantern_star_normals(const LanternParams& p) {
    const double a = p.alpha();
    const double q = p.height / p.n;
    const double d = p.sagitta();
    const double h = p.tri_height();
    const double ca = std::cos(a), sa = std::sin(a);
    return {Vec3{q, 0, -d} / h,       Vec3{q * ca, q * sa, d} / h, Vec3{q * ca, q * sa, -d} / h,
            Vec3{q, 0, d} / h,        Vec3{q * ca, -q * sa, -d} / h,
            Vec3{q * ca, -q * sa, d} / h};
}

struct LanternVertexDiagnostics {
    std::array<Vec3, 6> normals{};
    double d1 = 0.0;             // |N2 - N5| = |N3 - N6|, the congruent diagonals
    double d2 = 0.0;             // |N1 - N4|
    double envelope_area = 0.0;  // per-vertex geodesic envelope area
    int interior_vertex_count = 0;
    double total_envelope = 0.0;
};

/// Gauss-sphere diagnostics at a lantern vertex, with R = H = 1.
inline LanternVertexDiagnostics lantern_vertex_diagnostics(const LanternParams& p) {
    p.validate();
    if (p.radius != 1.0 || p.height != 1.0)
        throw precondition_error("vertex diagnostics are stated for R = H = 1");
    LanternVertexDiagnostics diag;
    diag.normals = lantern_star_normals(p);
    diag.d1 = (diag.normals[1] - diag.normals[4]).norm();
    diag.d2 = (diag.normals[0] - diag.normals[3]).norm();
    // normals cluster around the radial direction: rotate radial to +z so the
    // whole star sits in the gnomonic chart
    const Mat3 rot = Mat3::rotation_between({1, 0, 0}, {0, 0, 1});
    std::vector<UnitVector3> rotated;
    for (const Vec3& nv : diag.normals) rotated.emplace_back(rot.apply(nv));
    diag.envelope_area = spherical_polygon_area(geodesic_envelope(rotated));
    diag.interior_vertex_count = p.interior_vertex_count();
    diag.total_envelope = diag.envelope_area * diag.interior_vertex_count;
    return diag;
}

}  // namespace polycurv
