#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polycurv/div_measures.hpp"
#include "polycurv/gauss_sphere.hpp"
#include "polycurv/polyline.hpp"
#include "polycurv/triangulation.hpp"

namespace polycurv {

// Seeded generators for the randomized property suites. Everything is driven
// by a std::mt19937_64 so a failing case can be replayed from its seed.

inline PolygonalCurve random_polyline(std::mt19937_64& rng, int n_vertices = 20) {
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Vec2> pts;
    pts.reserve(n_vertices);
    while (static_cast<int>(pts.size()) < n_vertices) {
        Vec2 p{coord(rng), coord(rng)};
        if (!pts.empty() && p == pts.back()) continue;
        pts.push_back(p);
    }
    return PolygonalCurve(std::move(pts), false);
}

/// Closed convex polygon: sorted angles on a circle with a random affine map.
inline PolygonalCurve random_convex_polygon(std::mt19937_64& rng, int n_vertices = 12) {
    std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
    std::vector<double> angles(n_vertices);
    for (double& a : angles) a = unif(rng);
    std::sort(angles.begin(), angles.end());
    for (int i = 0; i + 1 < n_vertices; ++i)
        if (angles[i + 1] - angles[i] < 1e-6) angles[i + 1] = angles[i] + 1e-6;
    std::uniform_real_distribution<double> sc(0.5, 2.0);
    const double sx = sc(rng), sy = sc(rng);
    std::vector<Vec2> pts;
    for (double a : angles) pts.push_back({sx * std::cos(a), sy * std::sin(a)});
    return PolygonalCurve(std::move(pts), true);
}

/// Fan star around an interior vertex: ring of k points with random radii,
/// angles, and heights; the center vertex is the only interior one. Stars are
/// resampled until every tile normal sits safely in the upper hemisphere.
inline TriangulatedSurface3D random_vertex_star(std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::uniform_int_distribution<int> kd(4, 9);
        const int k = kd(rng);
        std::uniform_real_distribution<double> rad(0.6, 1.4);
        std::uniform_real_distribution<double> hgt(-0.3, 0.3);
        std::uniform_real_distribution<double> jit(0.3, 1.0);
        std::vector<double> gaps(k);
        double acc = 0.0;
        for (int i = 0; i < k; ++i) acc += (gaps[i] = jit(rng));
        std::vector<Vec3> pts{{0.0, 0.0, hgt(rng)}};
        double run = 0.0;
        for (int i = 0; i < k; ++i) {
            const double a = 2.0 * kPi * run / acc;
            run += gaps[i];
            const double r = rad(rng);
            pts.push_back({r * std::cos(a), r * std::sin(a), hgt(rng)});
        }
        std::vector<std::array<int, 3>> tris;
        for (int i = 0; i < k; ++i) tris.push_back({0, 1 + i, 1 + (i + 1) % k});
        TriangulatedSurface3D s(std::move(pts), std::move(tris));
        bool admissible = true;
        for (int t = 0; t < k; ++t)
            if (s.normal(t).z < 1e-4) admissible = false;
        if (admissible) return s;
    }
    throw std::runtime_error("failed to sample an admissible vertex star");
}

inline GraphSurface random_grid_lift(std::mt19937_64& rng, int k = 8) {
    Triangulation2D tri = regular_grid_triangulation(k);
    std::uniform_real_distribution<double> hgt(0.0, 0.5);
    std::vector<double> heights(tri.points.size());
    for (double& h : heights) h = hgt(rng);
    return GraphSurface(std::move(tri), std::move(heights));
}

struct PropertyResult {
    std::string suite;
    int trials = 0;
    int failures = 0;
    std::uint64_t seed = 0;
    std::string detail;

    bool ok() const { return failures == 0; }
};

/// Envelope bound A(G) <= 2 pi sum theta_j on random vertex stars.
inline PropertyResult proptest_envelope(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult res{"envelope", trials, 0, seed, ""};
    for (int t = 0; t < trials; ++t) {
        const TriangulatedSurface3D s = random_vertex_star(rng);
        const EnvelopeReport rep = envelope_bound_check(s, 0);
        if (!(rep.area <= rep.bound)) {
            ++res.failures;
            std::ostringstream os;
            os << "trial " << t << ": area " << rep.area << " > bound " << rep.bound;
            res.detail = os.str();
        }
    }
    return res;
}

/// Edge-measure mass identity and rotation invariance on random grid lifts.
inline PropertyResult proptest_measures(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult res{"measures", trials, 0, seed, ""};
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int t = 0; t < trials; ++t) {
        const GraphSurface g = random_grid_lift(rng);
        const TotalMassReport rep = total_mass_report(g);
        bool bad = rep.rel_err > 1e-9;

        const double phi = ang(rng);
        const double c = std::cos(phi), s = std::sin(phi);
        std::vector<Vec2> rotated(g.triangulation.points.size());
        for (std::size_t i = 0; i < rotated.size(); ++i) {
            const Vec2 p = g.triangulation.points[i] - Vec2{0.5, 0.5};
            rotated[i] = Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + Vec2{0.5, 0.5};
        }
        const GraphSurface gr(Triangulation2D(std::move(rotated), g.triangulation.triangles),
                              g.heights);
        const auto m0 = edge_measures(g);
        const auto m1 = edge_measures(gr);
        for (std::size_t i = 0; i < m0.size(); ++i) {
            const double denom = std::max({m0[i].mass, m1[i].mass, 1e-30});
            if (std::abs(m0[i].mass - m1[i].mass) / denom > 1e-9) bad = true;
        }
        if (bad) {
            ++res.failures;
            std::ostringstream os;
            os << "trial " << t << ": rel_err " << rep.rel_err;
            res.detail = os.str();
        }
    }
    return res;
}

/// Curve identities: normal variation vs curvature force, the TC/TC* chain,
/// and exactness of TC = 2 pi for closed convex polygons.
inline PropertyResult proptest_curves(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult res{"curves", trials, 0, seed, ""};
    for (int t = 0; t < trials; ++t) {
        const PolygonalCurve c = random_polyline(rng);
        const CurveCurvatureReport rep = curve_report(c);
        const double nv = polygonal_normal_variation(c);
        bool bad = false;
        if (std::abs(nv - rep.tc_star) > 1e-12 * std::max(1.0, rep.tc_star)) bad = true;
        const double slack = 1e-14 * (1.0 + rep.tc);
        if (!(2.0 / kPi * rep.tc <= rep.tc_star + slack) || !(rep.tc_star <= rep.tc + slack))
            bad = true;
        const PolygonalCurve poly = random_convex_polygon(rng);
        if (std::abs(curve_report(poly).tc - 2.0 * kPi) > 1e-12) bad = true;
        if (bad) {
            ++res.failures;
            std::ostringstream os;
            os << "trial " << t << ": nv " << nv << " tc* " << rep.tc_star;
            res.detail = os.str();
        }
    }
    return res;
}

}  // namespace polycurv
