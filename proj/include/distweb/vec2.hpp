#pragma once

#include <cmath>
#include <compare>

namespace distweb {

/// Planar point / vector with the usual arithmetic.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    Vec2 operator-() const { return {-x, -y}; }

    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

    // lexicographic (x, then y)
    friend auto operator<=>(Vec2 a, Vec2 b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

using Point = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 normalized(Vec2 a) {
    double n = norm(a);
    return {a.x / n, a.y / n};
}

/// 90-degree counterclockwise rotation.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline bool finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Closest point of the segment [a,b] to x.
inline Vec2 closest_on_segment(Vec2 x, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double t = dot(x - a, ab) / norm2(ab);
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return a + t * ab;
}

inline double dist_segment(Vec2 x, Vec2 a, Vec2 b) {
    return dist(x, closest_on_segment(x, a, b));
}

}  // namespace distweb
