#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/surface.hpp"
#include "polycurv/triangulation.hpp"

namespace polycurv {

/// Classification tolerance for the angle defect, in radians.
inline constexpr double kParabolicTol = 1e-9;

enum class VertexClass { elliptic, parabolic, hyperbolic };

inline const char* to_string(VertexClass c) {
    switch (c) {
        case VertexClass::elliptic: return "elliptic";
        case VertexClass::parabolic: return "parabolic";
        default: return "hyperbolic";
    }
}

/// Exterior dihedral angle across an interior edge, in [0, pi].
/// atan2 of (|n1 x n2|, n1.n2) agrees with the arcsin form for angles below
/// pi/2 and stays valid and well conditioned beyond it.
inline double dihedral_angle(const TriangulatedSurface3D& s, const Edge3D& e) {
    if (!e.interior()) throw boundary_error("dihedral angle undefined on a boundary edge");
    const Vec3 n1 = s.normal(e.t1);
    const Vec3 n2 = s.normal(e.t2);
    return std::atan2(n1.cross(n2).norm(), n1.dot(n2));
}

inline double dihedral_angle(const TriangulatedSurface3D& s, int edge_index) {
    return dihedral_angle(s, s.edges.at(edge_index));
}

struct EdgeCurvatureRecord {
    int edge_id = -1;
    double length = 0.0;
    double theta = 0.0;
    double sullivan = 0.0;       // L(e) * 2 sin(theta/2)
    double angle_version = 0.0;  // L(e) * theta
};

/// Records for all interior edges, in edge order.
inline std::vector<EdgeCurvatureRecord> edge_curvature_records(const TriangulatedSurface3D& s) {
    std::vector<EdgeCurvatureRecord> out;
    for (int i = 0; i < static_cast<int>(s.edges.size()); ++i) {
        const Edge3D& e = s.edges[i];
        if (!e.interior()) continue;
        EdgeCurvatureRecord r;
        r.edge_id = i;
        r.length = s.edge_length(e);
        r.theta = dihedral_angle(s, e);
        r.sullivan = r.length * 2.0 * std::sin(r.theta / 2.0);
        r.angle_version = r.length * r.theta;
        out.push_back(r);
    }
    return out;
}

/// (E_H, E~_H): Sullivan and full-angle mean curvature energies over interior edges.
inline std::pair<double, double> mean_curvature_energy(const TriangulatedSurface3D& s) {
    double eh = 0.0, eht = 0.0;
    for (const auto& r : edge_curvature_records(s)) {
        eh += r.sullivan;
        eht += r.angle_version;
    }
    return {eh, eht};
}

struct VertexCurvatureRecord {
    int vertex_id = -1;
    double angle_sum = 0.0;
    double defect = 0.0;  // 2 pi - angle_sum
    VertexClass cls = VertexClass::parabolic;
};

inline VertexCurvatureRecord angle_defect(const TriangulatedSurface3D& s, int v) {
    if (v < 0 || v >= s.num_vertices()) throw invalid_argument_error("vertex index out of range");
    if (s.boundary_vertex[v]) throw boundary_error("angle defect undefined on the boundary");
    VertexCurvatureRecord r;
    r.vertex_id = v;
    for (int t : s.vertex_triangles[v]) r.angle_sum += s.tile_angle(t, v);
    r.defect = 2.0 * kPi - r.angle_sum;
    r.cls = r.defect > kParabolicTol    ? VertexClass::elliptic
            : r.defect < -kParabolicTol ? VertexClass::hyperbolic
                                        : VertexClass::parabolic;
    return r;
}

inline std::vector<VertexCurvatureRecord> vertex_curvature_records(const TriangulatedSurface3D& s) {
    std::vector<VertexCurvatureRecord> out;
    for (int v = 0; v < s.num_vertices(); ++v)
        if (!s.boundary_vertex[v]) out.push_back(angle_defect(s, v));
    return out;
}

struct EnergyReport {
    double area = 0.0;
    double e_h = 0.0;
    double e_h_tilde = 0.0;
    double e_k = 0.0;        // sum over interior vertices of |defect|
    double e_k_tilde = 0.0;  // sum over interior vertices of the angle sums

    double total() const { return area + e_h + e_k; }
    double e_h_half() const { return e_h / 2.0; }
    double e_h_tilde_half() const { return e_h_tilde / 2.0; }
};

inline EnergyReport energy_report(const TriangulatedSurface3D& s) {
    EnergyReport r;
    r.area = s.total_area();
    const auto [eh, eht] = mean_curvature_energy(s);
    r.e_h = eh;
    r.e_h_tilde = eht;
    for (const auto& vr : vertex_curvature_records(s)) {
        r.e_k += std::abs(vr.defect);
        r.e_k_tilde += vr.angle_sum;
    }
    return r;
}

inline EnergyReport energy_report(const GraphSurface& g) { return energy_report(g.lift()); }

struct RelaxedSweep {
    std::vector<double> meshes;
    std::vector<EnergyReport> reports;
    /// Running minimum of the totals: an upper bound for the relaxed energy
    /// along this particular refinement family, not the true infimum.
    double liminf_upper_estimate = 0.0;
};

inline RelaxedSweep relaxed_sequence(const std::function<double(Vec2)>& u,
                                     const std::vector<Triangulation2D>& family) {
    if (family.size() < 2) throw invalid_argument_error("refinement family needs >= 2 levels");
    RelaxedSweep sweep;
    double prev_mesh = std::numeric_limits<double>::infinity();
    double running_min = std::numeric_limits<double>::infinity();
    for (const auto& tri : family) {
        const double m = tri.mesh();
        if (!(m < prev_mesh))
            throw invalid_argument_error("family meshes must be strictly decreasing");
        prev_mesh = m;
        const EnergyReport rep = energy_report(inscribe_graph(u, tri));
        running_min = std::min(running_min, rep.total());
        sweep.meshes.push_back(m);
        sweep.reports.push_back(rep);
    }
    sweep.liminf_upper_estimate = running_min;
    return sweep;
}

}  // namespace polycurv
