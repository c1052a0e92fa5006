#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace polycurv {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    Vec2 normalized() const { const double n = norm(); return {x / n, y / n}; }

    // 90-degree rotations; perp_cw matches the (a,b) -> (b,-a) normal convention.
    Vec2 perp_cw() const { return {y, -x}; }
    Vec2 perp_ccw() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double norm2() const { return x * x + y * y + z * z; }
    Vec3 normalized() const { const double n = norm(); return {x / n, y / n, z / n}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Angle in [0, pi] between two nonzero vectors, stable near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline double clamp_unit(double t) { return std::clamp(t, -1.0, 1.0); }

/// 3x3 rotation matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    static Mat3 rotation_z(double a) {
        Mat3 r;
        const double c = std::cos(a), s = std::sin(a);
        r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
        return r;
    }

    static Mat3 rotation_axis(const Vec3& axis, double a) {
        const Vec3 u = axis.normalized();
        const double c = std::cos(a), s = std::sin(a), t = 1.0 - c;
        Mat3 r;
        r.m = {t * u.x * u.x + c,       t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y,
               t * u.x * u.y + s * u.z, t * u.y * u.y + c,       t * u.y * u.z - s * u.x,
               t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c};
        return r;
    }

    /// Rotation mapping unit vector `from` onto unit vector `to`.
    static Mat3 rotation_between(const Vec3& from, const Vec3& to) {
        const Vec3 v = from.cross(to);
        const double c = from.dot(to);
        if (v.norm() < 1e-15) {
            if (c > 0) return Mat3{};
            // antipodal: rotate pi about any orthogonal axis
            Vec3 ax = std::abs(from.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            return rotation_axis(from.cross(ax), kPi);
        }
        return rotation_axis(v, std::atan2(v.norm(), c));
    }
};

}  // namespace polycurv
