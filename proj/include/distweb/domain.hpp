#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "distweb/errors.hpp"
#include "distweb/vec2.hpp"

namespace distweb {

inline constexpr double kVertexTol = 1e-12;

struct Polygon {
    std::vector<Point> vertices;  // counterclockwise simple loop
};

struct Disk {
    Point center;
    double radius = 0.0;
};

/// Tubular neighborhood of the segment [a,b]: {x : dist(x,[a,b]) < r}.
struct Stadium {
    Point a;
    Point b;
    double r = 0.0;
};

struct Domain {
    std::variant<Polygon, Disk, Stadium> shape;
    std::string label;

    bool is_polygon() const { return std::holds_alternative<Polygon>(shape); }
    bool is_disk() const { return std::holds_alternative<Disk>(shape); }
    bool is_stadium() const { return std::holds_alternative<Stadium>(shape); }
    const Polygon& polygon() const { return std::get<Polygon>(shape); }
    const Disk& disk() const { return std::get<Disk>(shape); }
    const Stadium& stadium() const { return std::get<Stadium>(shape); }
};

inline double signed_area(const std::vector<Point>& v) {
    double s = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

namespace detail {

// Proper or improper intersection of open segments, endpoints shared by
// adjacent edges excluded by the caller.
inline bool segments_intersect(Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) { return cross(q - p, r - p); };
    double o1 = orient(a, b, c);
    double o2 = orient(a, b, d);
    double o3 = orient(c, d, a);
    double o4 = orient(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return true;
    auto on = [](Point p, Point q, Point r) {
        return std::abs(cross(q - p, r - p)) < 1e-15 &&
               dot(r - p, r - q) <= 0.0;
    };
    return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) ||
           (o3 == 0 && on(c, d, a)) || (o4 == 0 && on(c, d, b));
}

}  // namespace detail

/// Builds a simple counterclockwise polygon; clockwise input is reversed.
inline Domain make_polygon(std::vector<Point> vertices, std::string label = "polygon") {
    if (vertices.size() < 3)
        throw DegenerateBoundary("polygon needs at least 3 vertices");
    for (const Point& p : vertices)
        if (!finite(p)) throw DegenerateBoundary("non-finite vertex");
    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (dist(vertices[i], vertices[j]) < kVertexTol)
                throw DegenerateBoundary("repeated vertex");
    double area = signed_area(vertices);
    if (std::abs(area) < kVertexTol)
        throw DegenerateBoundary("degenerate (collinear) vertex set");
    if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
    // self-intersection: non-adjacent edge pairs
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (detail::segments_intersect(vertices[i], vertices[(i + 1) % n],
                                           vertices[j], vertices[(j + 1) % n]))
                throw DegenerateBoundary("self-intersecting polygon");
        }
    }
    return Domain{Polygon{std::move(vertices)}, std::move(label)};
}

inline Domain make_disk(Point center, double radius, std::string label = "disk") {
    if (!finite(center) || !(radius > 0.0))
        throw DegenerateBoundary("disk needs finite center and radius > 0");
    return Domain{Disk{center, radius}, std::move(label)};
}

inline Domain make_stadium(Point a, Point b, double r, std::string label = "stadium") {
    if (!finite(a) || !finite(b) || !(r > 0.0))
        throw DegenerateBoundary("stadium needs finite endpoints and r > 0");
    if (dist(a, b) < kVertexTol)
        throw DegenerateBoundary("stadium axis endpoints coincide (use a disk)");
    return Domain{Stadium{a, b, r}, std::move(label)};
}

inline bool polygon_is_convex(const Polygon& poly) {
    const auto& v = poly.vertices;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        double c = cross(v[(i + 1) % n] - v[i], v[(i + 2) % n] - v[(i + 1) % n]);
        if (c < -kVertexTol) return false;
    }
    return true;
}

inline bool point_in_polygon(const Polygon& poly, Point x) {
    // crossing number; boundary points count as outside (open set)
    const auto& v = poly.vertices;
    const size_t n = v.size();
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if (dist_segment(x, v[j], v[i]) < kVertexTol) return false;
        if ((v[i].y > x.y) != (v[j].y > x.y)) {
            double t = (x.y - v[i].y) / (v[j].y - v[i].y);
            if (x.x < v[i].x + t * (v[j].x - v[i].x)) inside = !inside;
        }
    }
    return inside;
}

/// Membership in the open set.
inline bool contains(const Domain& dom, Point x) {
    if (!finite(x)) return false;
    if (dom.is_disk()) return dist(x, dom.disk().center) < dom.disk().radius;
    if (dom.is_stadium()) {
        const Stadium& s = dom.stadium();
        return dist_segment(x, s.a, s.b) < s.r;
    }
    return point_in_polygon(dom.polygon(), x);
}

/// Axis-aligned bounding box of the closed domain.
inline void bounding_box(const Domain& dom, Point& lo, Point& hi) {
    if (dom.is_disk()) {
        const Disk& d = dom.disk();
        lo = {d.center.x - d.radius, d.center.y - d.radius};
        hi = {d.center.x + d.radius, d.center.y + d.radius};
    } else if (dom.is_stadium()) {
        const Stadium& s = dom.stadium();
        lo = {std::min(s.a.x, s.b.x) - s.r, std::min(s.a.y, s.b.y) - s.r};
        hi = {std::max(s.a.x, s.b.x) + s.r, std::max(s.a.y, s.b.y) + s.r};
    } else {
        lo = hi = dom.polygon().vertices.front();
        for (const Point& p : dom.polygon().vertices) {
            lo.x = std::min(lo.x, p.x);
            lo.y = std::min(lo.y, p.y);
            hi.x = std::max(hi.x, p.x);
            hi.y = std::max(hi.y, p.y);
        }
    }
}

}  // namespace distweb
