#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "distweb/convex.hpp"
#include "distweb/domain.hpp"
#include "distweb/errors.hpp"
#include "distweb/vec2.hpp"

namespace distweb {

inline constexpr double kProjectionTol = 1e-10;  // |x-q| = d membership
inline constexpr double kAngularTol = 1e-6;      // merge near-duplicate gradients

/// Circular arc {center + radius * (cos a, sin a) : a in [angle_lo, angle_hi]},
/// used to encode continuum projection sets (disk center, stadium cap tips)
/// without discretizing them.
struct Arc {
    Point center;
    double radius = 0.0;
    double angle_lo = 0.0;
    double angle_hi = 0.0;

    double width() const { return angle_hi - angle_lo; }
};

struct DistanceEval {
    double value = 0.0;
    std::vector<Point> projections;  // finite part of pi_boundary(x)
    std::vector<Vec2> grads;         // finite part of the reachable gradients
    std::optional<Arc> projection_arc;  // continuum part, if any
    std::optional<Arc> grad_arc;        // corresponding unit-vector arc
    bool is_singular = false;
};

struct Superdifferential {
    std::vector<Vec2> extremals;  // reachable gradients (unit vectors)
    std::optional<Arc> extremal_arc;
    bool hull_contains_zero = false;
    int dim = 0;  // affine dimension of the hull
};

namespace detail {

inline void push_grad(DistanceEval& ev, Point q, Point x) {
    for (const Point& p : ev.projections)
        if (dist(p, q) < 10 * kProjectionTol) return;
    ev.projections.push_back(q);
    Vec2 g = (x - q) / ev.value;
    for (const Vec2& h : ev.grads)
        if (std::abs(std::atan2(cross(h, g), dot(h, g))) < kAngularTol) return;
    ev.grads.push_back(g);
}

inline DistanceEval distance_polygon(const Polygon& poly, Point x) {
    const auto& v = poly.vertices;
    const size_t n = v.size();
    DistanceEval ev;
    ev.value = std::numeric_limits<double>::infinity();
    std::vector<Point> candidates(n);
    for (size_t i = 0; i < n; ++i) {
        candidates[i] = closest_on_segment(x, v[i], v[(i + 1) % n]);
        ev.value = std::min(ev.value, dist(x, candidates[i]));
    }
    if (ev.value <= kProjectionTol) {
        ev.value = 0.0;
        ev.projections.push_back(x);
        return ev;
    }
    for (const Point& q : candidates)
        if (dist(x, q) - ev.value <= kProjectionTol) push_grad(ev, q, x);
    return ev;
}

inline DistanceEval distance_disk(const Disk& d, Point x) {
    DistanceEval ev;
    double s = dist(x, d.center);
    ev.value = d.radius - s;
    if (ev.value <= kProjectionTol) {
        ev.value = 0.0;
        ev.projections.push_back(x);
        return ev;
    }
    if (s <= kProjectionTol) {
        // center: the projection set is the whole boundary circle
        ev.projection_arc = Arc{d.center, d.radius, 0.0, 2 * M_PI};
        ev.grad_arc = Arc{{0, 0}, 1.0, 0.0, 2 * M_PI};
        return ev;
    }
    Vec2 u = (x - d.center) / s;
    ev.projections.push_back(d.center + d.radius * u);
    ev.grads.push_back(-u);
    return ev;
}

inline DistanceEval distance_stadium(const Stadium& st, Point x) {
    DistanceEval ev;
    Point s = closest_on_segment(x, st.a, st.b);
    double ds = dist(x, s);
    ev.value = st.r - ds;
    if (ev.value <= kProjectionTol) {
        ev.value = 0.0;
        ev.projections.push_back(x);
        return ev;
    }
    if (ds > kProjectionTol) {
        Vec2 u = (x - s) / ds;
        ev.projections.push_back(s + st.r * u);
        ev.grads.push_back(-u);
        return ev;
    }
    // x lies on the axis segment
    Vec2 axis = normalized(st.b - st.a);
    if (dist(x, st.a) <= kProjectionTol || dist(x, st.b) <= kProjectionTol) {
        // cap tip: projections fill the outward half-circle
        Vec2 out = dist(x, st.a) <= kProjectionTol ? -axis : axis;
        double a0 = std::atan2(out.y, out.x);
        Point tip = dist(x, st.a) <= kProjectionTol ? st.a : st.b;
        ev.projection_arc = Arc{tip, st.r, a0 - M_PI / 2, a0 + M_PI / 2};
        // gradients point back toward the tip
        ev.grad_arc = Arc{{0, 0}, 1.0, a0 + M_PI / 2, a0 + 3 * M_PI / 2};
        return ev;
    }
    Vec2 nrm = perp(axis);
    ev.projections = {x + st.r * nrm, x - st.r * nrm};
    ev.grads = {-nrm, nrm};
    return ev;
}

}  // namespace detail

/// Distance to the boundary with full projection set and reachable
/// gradients. Throws OutsideDomain for points off the closed domain.
inline DistanceEval distance(const Domain& dom, Point x) {
    DistanceEval ev;
    if (dom.is_disk()) {
        if (dist(x, dom.disk().center) > dom.disk().radius + 1e-9)
            throw OutsideDomain("point outside the closed disk");
        ev = detail::distance_disk(dom.disk(), x);
    } else if (dom.is_stadium()) {
        const Stadium& s = dom.stadium();
        if (dist_segment(x, s.a, s.b) > s.r + 1e-9)
            throw OutsideDomain("point outside the closed stadium");
        ev = detail::distance_stadium(s, x);
    } else {
        if (!point_in_polygon(dom.polygon(), x)) {
            // accept boundary points of the closed set
            double bd = std::numeric_limits<double>::infinity();
            const auto& v = dom.polygon().vertices;
            for (size_t i = 0; i < v.size(); ++i)
                bd = std::min(bd, dist_segment(x, v[i], v[(i + 1) % v.size()]));
            if (bd > 1e-9) throw OutsideDomain("point outside the closed polygon");
        }
        ev = detail::distance_polygon(dom.polygon(), x);
    }
    ev.is_singular = ev.grads.size() >= 2 || ev.grad_arc.has_value();
    return ev;
}

/// Superdifferential of the distance function at an interior point:
/// conv of the reachable gradients, with exact 0-membership test.
inline Superdifferential superdifferential(const Domain& dom, Point x) {
    DistanceEval ev = distance(dom, x);
    if (ev.value <= 0.0) throw OutsideDomain("superdifferential needs d(x) > 0");
    Superdifferential sd;
    sd.extremals = ev.grads;
    sd.extremal_arc = ev.grad_arc;
    if (ev.grad_arc) {
        sd.dim = 2;
        sd.hull_contains_zero = ev.grad_arc->width() >= M_PI - 1e-12;
        return sd;
    }
    std::vector<Point> pts(sd.extremals.begin(), sd.extremals.end());
    sd.dim = affine_dim(pts);
    sd.hull_contains_zero = hull_contains(pts, Point{0, 0});
    return sd;
}

/// Inradius and a point attaining it. Exact for disk, stadium and
/// convex polygon; sampled with local refinement otherwise.
inline std::pair<double, Point> inradius(const Domain& dom) {
    if (dom.is_disk()) return {dom.disk().radius, dom.disk().center};
    if (dom.is_stadium()) {
        const Stadium& s = dom.stadium();
        return {s.r, 0.5 * (s.a + s.b)};
    }
    const Polygon& poly = dom.polygon();
    if (polygon_is_convex(poly)) {
        auto [c, t] = chebyshev_center(poly);
        return {t, c};
    }
    // non-convex: coarse scan plus shrinking local refinement
    Point lo, hi;
    bounding_box(dom, lo, hi);
    Point best{0, 0};
    double best_d = -1.0;
    const int n0 = 64;
    for (int i = 0; i <= n0; ++i)
        for (int j = 0; j <= n0; ++j) {
            Point p{lo.x + (hi.x - lo.x) * i / n0, lo.y + (hi.y - lo.y) * j / n0};
            if (!contains(dom, p)) continue;
            double d = distance(dom, p).value;
            if (d > best_d) { best_d = d; best = p; }
        }
    double span = std::max(hi.x - lo.x, hi.y - lo.y) / n0;
    for (int pass = 0; pass < 24; ++pass) {
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j) {
                Point p = best + Vec2{span * i / 2.0, span * j / 2.0};
                if (!contains(dom, p)) continue;
                double d = distance(dom, p).value;
                if (d > best_d) { best_d = d; best = p; }
            }
        span *= 0.5;
    }
    return {best_d, best};
}

}  // namespace distweb
