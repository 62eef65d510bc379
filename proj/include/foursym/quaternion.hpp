#pragma once

#include <cmath>
#include <iosfwd>

namespace foursym {

/// Quaternion w + x i + y j + z k over doubles. Coordinates follow the
/// basis order (1, i, j, k) = (e0, e1, e2, e3) used throughout.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

    // Hamilton product.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double re() const { return w; }
    constexpr Quaternion im() const { return {0, x, y, z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    constexpr double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }

    Quaternion inverse() const { return conj() / norm2(); }
    Quaternion normalized() const { return *this / norm(); }

    constexpr double operator[](int c) const { return c == 0 ? w : (c == 1 ? x : (c == 2 ? y : z)); }
};

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Unit quaternion exp: exp(q) for pure-imaginary q is cos|q| + sin|q| q/|q|.
inline Quaternion qexp(const Quaternion& q) {
    const double a = q.im().norm();
    const double ew = std::exp(q.w);
    if (a < 1e-300) return {ew, 0, 0, 0};
    const double s = ew * std::sin(a) / a;
    return {ew * std::cos(a), s * q.x, s * q.y, s * q.z};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace foursym
