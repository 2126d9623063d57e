#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace diams {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 &operator+=(const Vec3 &o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3 &operator-=(const Vec3 &o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3 &operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;

    friend std::ostream &operator<<(std::ostream &os, const Vec3 &v) {
        return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
    }
};

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Determinant [a, b, c] of the matrix with rows a, b, c.
constexpr double triple(const Vec3 &a, const Vec3 &b, const Vec3 &c) { return dot(a, cross(b, c)); }

inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline double max_abs_coord(const Vec3 &a) {
    return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z)));
}

inline bool is_finite(const Vec3 &a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Row-major 3x3 matrix; enough linear algebra for unimodular transforms.
struct Mat3 {
    std::array<double, 9> m{};

    static constexpr Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

    constexpr double operator()(int r, int c) const { return m[3 * r + c]; }
    constexpr double &operator()(int r, int c) { return m[3 * r + c]; }

    constexpr Vec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }

    friend constexpr Vec3 operator*(const Mat3 &a, const Vec3 &v) {
        return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
    }

    constexpr double det() const { return triple(row(0), row(1), row(2)); }

    /// Inverse transpose (cofactor matrix / det).
    constexpr Mat3 inverse_transpose() const {
        const Vec3 c0 = cross(row(1), row(2));
        const Vec3 c1 = cross(row(2), row(0));
        const Vec3 c2 = cross(row(0), row(1));
        const double d = det();
        return Mat3{{c0.x / d, c0.y / d, c0.z / d, c1.x / d, c1.y / d, c1.z / d, c2.x / d, c2.y / d,
                     c2.z / d}};
    }
};

} // namespace diams
