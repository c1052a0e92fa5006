#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/polyline.hpp"

namespace polycurv {

/// Level-k polygonal of the graph of u_k, the primitive of the k-th
/// Cantor-Vitali approximation v_k, over the partition {h 3^-k}.
struct CantorApproximation {
    int level;
    std::vector<double> partition;
    std::vector<double> heights;      // u_k at the partition points
    std::vector<double> step_values;  // v_k at the partition points (exact dyadics)
    PolygonalCurve polygonal;
    int bent_vertex_count;            // junctions with a genuine slope change
};

/// Numerators of v_k on the grid h 3^-k: v_k(h 3^-k) = num[h] / 2^k exactly.
inline std::vector<std::int64_t> cantor_vitali_numerators(int k) {
    std::vector<std::int64_t> v{0, 1};
    for (int lev = 0; lev < k; ++lev) {
        const std::size_t n = v.size() - 1;
        const std::int64_t half = std::int64_t{1} << lev;  // 1/2 at the new level
        std::vector<std::int64_t> w(3 * n + 1);
        for (std::size_t h = 0; h <= 3 * n; ++h) {
            if (h <= n)
                w[h] = v[h];
            else if (h <= 2 * n)
                w[h] = half;
            else
                w[h] = half + v[h - 2 * n];
        }
        v = std::move(w);
    }
    return v;
}

inline CantorApproximation cantor_polygonal(int k) {
    if (k < 0) throw invalid_argument_error("cantor level must be nonnegative");
    if (k > 12) throw resource_error("cantor level > 12: partition would exceed 3^12+1 points");

    const std::vector<std::int64_t> num = cantor_vitali_numerators(k);
    const std::size_t np = num.size();
    std::int64_t gi = 1;
    for (int i = 0; i < k; ++i) gi *= 3;
    const double g = static_cast<double>(gi);
    const double denom = std::ldexp(g, k + 1);  // 2^(k+1) 3^k

    std::vector<double> partition(np), heights(np), steps(np);
    std::int64_t acc = 0;  // 2^(k+1) 3^k * u_k, an exact integer
    partition[0] = 0.0;
    heights[0] = 0.0;
    steps[0] = std::ldexp(static_cast<double>(num[0]), -k);
    for (std::size_t h = 0; h + 1 < np; ++h) {
        partition[h + 1] = static_cast<double>(h + 1) / g;
        // v_k is affine between grid points, so the trapezoid is the exact
        // piecewise-quadratic primitive evaluated at the nodes; the running
        // numerator stays integral, so u_k carries a single rounding each
        acc += num[h] + num[h + 1];
        heights[h + 1] = static_cast<double>(acc) / denom;
        steps[h + 1] = std::ldexp(static_cast<double>(num[h + 1]), -k);
    }

    // the polygonal slope on step h is (v[h]+v[h+1])/2; a junction bends iff
    // v[h+1] != v[h-1], an exact integer comparison
    int bent = 0;
    for (std::size_t h = 1; h + 1 < np; ++h)
        if (num[h + 1] != num[h - 1]) ++bent;

    std::vector<Vec2> verts(np);
    for (std::size_t h = 0; h < np; ++h) verts[h] = {partition[h], heights[h]};

    return CantorApproximation{k, std::move(partition), std::move(heights), std::move(steps),
                               PolygonalCurve(std::move(verts), false), bent};
}

}  // namespace polycurv
