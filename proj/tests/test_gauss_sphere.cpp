#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polycurv/gauss_sphere.hpp"
#include "polycurv/lantern.hpp"
#include "polycurv/proptest.hpp"
#include "polycurv/smoothing.hpp"

using namespace polycurv;

namespace {

SphericalPolygon make_poly(std::vector<Vec3> vs) {
    SphericalPolygon p;
    p.convex = true;
    for (const Vec3& v : vs) p.vertices.emplace_back(v);
    return p;
}

/// Regular-tetrahedron corner with the apex up (see test_curvature.cpp).
TriangulatedSurface3D tetra_corner() {
    const double r = 1.0 / std::sqrt(3.0);
    const double h = std::sqrt(2.0 / 3.0);
    std::vector<Vec3> pts{{0, 0, h}};
    for (int i = 0; i < 3; ++i) {
        const double a = kPi / 2 + 2 * kPi * i / 3;
        pts.push_back({r * std::cos(a), r * std::sin(a), 0.0});
    }
    return TriangulatedSurface3D(std::move(pts), {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}});
}

/// Right square pyramid lift: apex over the center of a square base.
TriangulatedSurface3D square_pyramid(double apex_height) {
    std::vector<Vec3> pts{{0, 0, apex_height}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
    return TriangulatedSurface3D(std::move(pts),
                                 {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
}

}  // namespace

TEST_SUITE("gauss_sphere") {

TEST_CASE("octant triangle has area pi/2") {
    const auto poly = make_poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(spherical_polygon_area(poly) == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(oracles::lhuilier_fan_area(poly.vertices) == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("tetrahedron corner normals span area pi") {
    const auto s = tetra_corner();
    std::vector<UnitVector3> normals = star_normals(s, 0);
    REQUIRE(normals.size() == 3);
    // spherical law of cosines: equilateral sides arccos(-1/3) give gamma = 2pi/3
    const auto poly = geodesic_envelope(normals);
    const auto gammas = spherical_vertex_angles(poly);
    for (double g : gammas) CHECK(g == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
    CHECK(spherical_polygon_area(poly) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("degenerate polygons have zero area") {
    CHECK(spherical_polygon_area(make_poly({{1, 0, 0}, {0, 0, 1}})) == 0.0);
    CHECK(spherical_polygon_area(make_poly({{0, 0, 1}})) == 0.0);
    // all on one geodesic
    const double s2 = std::sqrt(0.5);
    CHECK(spherical_polygon_area(make_poly({{1, 0, 0}, {s2, 0, s2}, {0, 0, 1}, {-s2, 0, s2}})) ==
          0.0);
}

TEST_CASE("antipodal consecutive vertices rejected") {
    CHECK_THROWS_AS(
        spherical_polygon_area(make_poly({{0, 0, 1}, {0, 0, -1}, {1, 0, 0}})),
        geodesic_error);
}

TEST_CASE("angle-sum area agrees with the l'Huilier fan oracle") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int tested = 0;
    while (tested < 200) {
        // random points in a spherical cap around +z, enveloped to a convex polygon
        std::vector<UnitVector3> pts;
        const int k = 3 + static_cast<int>((unif(rng) + 1) * 4.5);
        for (int i = 0; i < k; ++i)
            pts.emplace_back(Vec3{0.8 * unif(rng), 0.8 * unif(rng), 1.0});
        const SphericalPolygon poly = geodesic_envelope(pts);
        if (poly.vertices.size() < 3 || poly.vertices.size() > 12) continue;
        ++tested;
        const double a1 = spherical_polygon_area(poly);
        const double a2 = oracles::lhuilier_fan_area(poly.vertices);
        CHECK(std::abs(a1 - a2) <= 1e-10);
    }
}

TEST_CASE("envelopes") {
    SUBCASE("all normals equal: single point, zero area") {
        std::vector<UnitVector3> ns(4, UnitVector3(Vec3{0.1, -0.2, 1.0}));
        const auto poly = geodesic_envelope(ns);
        CHECK(poly.vertices.size() == 1);
        CHECK(spherical_polygon_area(poly) == 0.0);
    }
    SUBCASE("two distinct normals: geodesic arc, zero area") {
        std::vector<UnitVector3> ns{UnitVector3(Vec3{0.3, 0, 1}), UnitVector3(Vec3{-0.2, 0.1, 1}),
                                    UnitVector3(Vec3{0.3, 0, 1})};
        CHECK(spherical_polygon_area(geodesic_envelope(ns)) == 0.0);
    }
    SUBCASE("lower hemisphere rejected") {
        std::vector<UnitVector3> ns{UnitVector3(Vec3{0, 0, 1}), UnitVector3(Vec3{1, 0, -0.5})};
        CHECK_THROWS_AS(geodesic_envelope(ns), hemisphere_error);
    }
    SUBCASE("lantern hexagon area stays positive while the defect vanishes") {
        const auto diag = lantern_vertex_diagnostics(LanternParams{1.0, 1.0, 16, 16});
        CHECK(diag.envelope_area > 0.2);
        CHECK(diag.envelope_area == doctest::Approx(0.233545).epsilon(5e-4));
    }
}

TEST_CASE("rotation about the vertical axis preserves envelope area") {
    std::mt19937_64 rng(8080);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 25; ++t) {
        std::vector<UnitVector3> ns;
        for (int i = 0; i < 6; ++i) ns.emplace_back(Vec3{0.6 * unif(rng), 0.6 * unif(rng), 1.0});
        const double a0 = spherical_polygon_area(geodesic_envelope(ns));
        const Mat3 rot = Mat3::rotation_z(unif(rng) * kPi);
        std::vector<UnitVector3> rotated;
        for (const auto& n : ns) rotated.emplace_back(rot.apply(n.v));
        const double a1 = spherical_polygon_area(geodesic_envelope(rotated));
        CHECK(std::abs(a0 - a1) <= 1e-10);
    }
}

TEST_CASE("envelope bound on vertex stars") {
    SUBCASE("planar star") {
        const auto s = inscribe_graph([](Vec2) { return 0.25; }, regular_grid_triangulation(2))
                           .lift();
        const auto rep = envelope_bound_check(s, 4);
        CHECK(rep.area == 0.0);
        CHECK(rep.theta_sum == doctest::Approx(2 * kPi));
        CHECK(rep.ok);
    }
    SUBCASE("tetrahedron corner: pi <= 2 pi * pi") {
        const auto rep = envelope_bound_check(tetra_corner(), 0);
        CHECK(rep.area == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(rep.theta_sum == doctest::Approx(kPi).epsilon(1e-13));
        CHECK(rep.ok);
    }
    SUBCASE("random stars, seed-fixed") {
        const auto res = proptest_envelope(200, 20240811);
        CHECK(res.failures == 0);
    }
}

TEST_CASE("elliptic identity") {
    SUBCASE("tetrahedron corner gives (pi, pi)") {
        const auto res = elliptic_identity_check(tetra_corner(), 0);
        CHECK(res.area == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(res.defect == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(res.abs_err <= 1e-12);
    }
    SUBCASE("square pyramid apex, against the l'Huilier oracle") {
        const auto s = square_pyramid(0.75);
        const auto res = elliptic_identity_check(s, 0);
        CHECK(res.abs_err <= 1e-8);
        const auto envelope = geodesic_envelope(star_normals(s, 0));
        CHECK(std::abs(oracles::lhuilier_fan_area(envelope.vertices) - res.defect) <= 1e-8);
    }
    SUBCASE("parabolic lantern vertex violates the precondition") {
        const auto s = build_lantern(LanternParams{1.0, 1.0, 8, 8});
        int interior = -1;
        for (int v = 0; v < s.num_vertices(); ++v)
            if (!s.boundary_vertex[v]) {
                interior = v;
                break;
            }
        REQUIRE(interior >= 0);
        CHECK_THROWS_AS(elliptic_identity_check(s, interior), precondition_error);
    }
    SUBCASE("holds at every interior vertex of a convex lift") {
        // the cross term must bend the cell diagonals convexly, so it is
        // nonpositive for the (+1,+1)-diagonal grid
        const auto g = inscribe_graph(
            [](Vec2 p) { return 0.7 * p.x * p.x + 0.4 * p.y * p.y - 0.2 * p.x * p.y; },
            regular_grid_triangulation(6));
        REQUIRE(locally_convex_lift(g, 1e-15));
        const auto s = g.lift();
        for (int v = 0; v < s.num_vertices(); ++v) {
            if (s.boundary_vertex[v]) continue;
            CHECK(elliptic_identity_check(s, v).abs_err <= 1e-8);
        }
    }
    SUBCASE("a nonconvex lift of a convex function breaks the hull identity") {
        // positive cross term: elliptic vertices whose tangent cone is not
        // convex; the envelope strictly exceeds the defect
        const auto g = inscribe_graph(
            [](Vec2 p) { return 0.7 * p.x * p.x + 0.4 * p.y * p.y + 0.2 * p.x * p.y; },
            regular_grid_triangulation(6));
        CHECK(!locally_convex_lift(g, 1e-15));
        const auto s = g.lift();
        const auto res = elliptic_identity_check(s, 3 * 7 + 3);
        CHECK(res.area > res.defect + 1e-4);
    }
}

}  // TEST_SUITE
