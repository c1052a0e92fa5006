#include <doctest.h>

#include <cmath>

#include "polycurv/cantor.hpp"

using namespace polycurv;

TEST_SUITE("cantor") {

TEST_CASE("primitive endpoints: u_k(0) = 0, u_k(1) = 1/2") {
    for (int k = 0; k <= 8; ++k) {
        const auto ca = cantor_polygonal(k);
        CHECK(ca.heights.front() == 0.0);
        CHECK(ca.heights.back() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(ca.partition.size() == ca.heights.size());
    }
}

TEST_CASE("bent vertex count is 2^(k+1) - 2") {
    for (int k = 0; k <= 10; ++k) {
        const auto ca = cantor_polygonal(k);
        CHECK(ca.bent_vertex_count == (1 << (k + 1)) - 2);
    }
}

TEST_CASE("every edge slope exceeds 6^-k") {
    for (int k = 1; k <= 8; ++k) {
        const auto ca = cantor_polygonal(k);
        const double bound = std::pow(6.0, -k);
        for (std::size_t h = 0; h + 1 < ca.step_values.size(); ++h) {
            const double slope = 0.5 * (ca.step_values[h] + ca.step_values[h + 1]);
            CHECK(slope > bound);
        }
    }
}

// The slope difference between consecutive edges is exactly 2^-(k+1), so
// every turning angle is below arcsin(2^-(k+1)).
TEST_CASE("turning angles below arcsin(2^-(k+1))") {
    for (int k = 1; k <= 8; ++k) {
        const auto rep = curve_report(cantor_polygonal(k).polygonal);
        CHECK(rep.max_turning <= std::asin(std::pow(2.0, -(k + 1))));
        CHECK(rep.max_turning > 0.0);
    }
}

TEST_CASE("tc gap vanishes monotonically") {
    double prev = 1e9;
    for (int k = 1; k <= 8; ++k) {
        const auto rep = curve_report(cantor_polygonal(k).polygonal);
        const double gap = std::abs(rep.tc - rep.tc_star);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("level bounds") {
    CHECK_THROWS_AS(cantor_polygonal(-1), invalid_argument_error);
    CHECK_THROWS_AS(cantor_polygonal(13), resource_error);
}

}  // TEST_SUITE
