#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "polycurv/errors.hpp"
#include "polycurv/geometry.hpp"

namespace polycurv {

/// Uniform N x N scalar samples on [0,1]^2, spacing 1/(N-1); constant
/// extension outside the square. Storage is row-major with x1 along rows.
struct GridField {
    int n = 0;
    std::vector<double> data;

    GridField(int n_, std::vector<double> values) : n(n_), data(std::move(values)) {
        if (n < 17) throw invalid_argument_error("grid needs N >= 17");
        if (data.size() != static_cast<std::size_t>(n) * n)
            throw invalid_argument_error("grid data size mismatch");
        for (double v : data)
            if (!std::isfinite(v)) throw invalid_argument_error("non-finite grid sample");
    }

    static GridField sample(int n_, const std::function<double(Vec2)>& f) {
        std::vector<double> vals(static_cast<std::size_t>(n_) * n_);
        const double dx = 1.0 / (n_ - 1);
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i)
                vals[static_cast<std::size_t>(j) * n_ + i] = f({i * dx, j * dx});
        return GridField(n_, std::move(vals));
    }

    double dx() const { return 1.0 / (n - 1); }
    double at(int i, int j) const { return data[static_cast<std::size_t>(j) * n + i]; }
    double& at(int i, int j) { return data[static_cast<std::size_t>(j) * n + i]; }

    /// Sample with clamped indices: the constant extension.
    double at_ext(int i, int j) const {
        i = std::clamp(i, 0, n - 1);
        j = std::clamp(j, 0, n - 1);
        return at(i, j);
    }
};

/// Radial bump kernel (1 - |x/eps|^2)^4 on |x| < eps, discretized with unit mass.
struct MollifierSpec {
    double eps = 0.0;

    explicit MollifierSpec(double eps_) : eps(eps_) {
        if (!(eps > 0.0)) throw invalid_argument_error("mollifier radius must be positive");
    }

    /// Discrete kernel weights for grid spacing dx; normalized to sum 1.
    std::vector<double> kernel(double dx, int& radius_out) const {
        if (eps < 4.0 * dx - 1e-12)
            throw resolution_error("mollifier radius below 4 grid spacings");
        const int r = static_cast<int>(std::ceil(eps / dx)) - 1;
        radius_out = r;
        const int w = 2 * r + 1;
        std::vector<double> k(static_cast<std::size_t>(w) * w, 0.0);
        double sum = 0.0;
        for (int j = -r; j <= r; ++j)
            for (int i = -r; i <= r; ++i) {
                const double rr = (i * i + j * j) * dx * dx / (eps * eps);
                if (rr < 1.0) {
                    const double t = 1.0 - rr;
                    const double val = t * t * t * t;
                    k[static_cast<std::size_t>(j + r) * w + (i + r)] = val;
                    sum += val;
                }
            }
        for (double& v : k) v /= sum;
        return k;
    }
};

/// Discrete convolution with constant extension outside the square.
inline GridField mollify(const GridField& f, const MollifierSpec& m) {
    int r = 0;
    const std::vector<double> k = m.kernel(f.dx(), r);
    const int w = 2 * r + 1;
    std::vector<double> out(f.data.size(), 0.0);
    for (int j = 0; j < f.n; ++j)
        for (int i = 0; i < f.n; ++i) {
            double acc = 0.0;
            for (int dj = -r; dj <= r; ++dj) {
                const int jj = std::clamp(j + dj, 0, f.n - 1);
                const double* krow = &k[static_cast<std::size_t>(dj + r) * w];
                for (int di = -r; di <= r; ++di)
                    acc += krow[di + r] * f.at(std::clamp(i + di, 0, f.n - 1), jj);
            }
            out[static_cast<std::size_t>(j) * f.n + i] = acc;
        }
    return GridField(f.n, std::move(out));
}

}  // namespace polycurv
