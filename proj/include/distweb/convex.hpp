#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "distweb/domain.hpp"
#include "distweb/vec2.hpp"

namespace distweb {

/// Convex hull in counterclockwise order (Andrew monotone chain).
/// Collinear interior points are dropped.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {  // lower
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

/// Affine dimension of a point set (0, 1 or 2) with tolerance.
inline int affine_dim(const std::vector<Point>& pts, double tol = 1e-12) {
    if (pts.empty()) return -1;
    Point base = pts.front();
    Point dir{0, 0};
    bool have_dir = false;
    for (const Point& p : pts) {
        Point d = p - base;
        if (norm(d) <= tol) continue;
        if (!have_dir) {
            dir = normalized(d);
            have_dir = true;
        } else if (std::abs(cross(dir, d)) > tol * std::max(1.0, norm(d))) {
            return 2;
        }
    }
    return have_dir ? 1 : 0;
}

/// Membership of q in conv(pts), boundary included.
inline bool hull_contains(const std::vector<Point>& pts, Point q, double tol = 1e-12) {
    int dim = affine_dim(pts, tol);
    if (dim <= 0) return !pts.empty() && dist(pts.front(), q) <= tol;
    if (dim == 1) {
        // extremes along the common line
        Point base = pts.front();
        Point dir{0, 0};
        for (const Point& p : pts)
            if (norm(p - base) > tol) { dir = normalized(p - base); break; }
        double lo = 0, hi = 0;
        for (const Point& p : pts) {
            double t = dot(p - base, dir);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        if (std::abs(cross(dir, q - base)) > tol) return false;
        double t = dot(q - base, dir);
        return t >= lo - tol && t <= hi + tol;
    }
    std::vector<Point> hull = convex_hull(pts);
    const size_t n = hull.size();
    for (size_t i = 0; i < n; ++i) {
        Point a = hull[i], b = hull[(i + 1) % n];
        if (cross(b - a, q - a) < -tol * std::max(1.0, norm(b - a))) return false;
    }
    return true;
}

/// Distance from the origin to the relative boundary of conv(pts):
/// for a segment through 0, the nearer endpoint; for a 2-D hull with
/// 0 inside, the nearest edge. Returns 0 if 0 is not in the relative
/// interior.
inline double origin_to_hull_boundary(const std::vector<Point>& pts, double tol = 1e-12) {
    int dim = affine_dim(pts, tol);
    if (dim <= 0) return 0.0;
    if (dim == 1) {
        if (!hull_contains(pts, Point{0, 0}, tol)) return 0.0;
        Point base = pts.front();
        Point dir{0, 0};
        for (const Point& p : pts)
            if (norm(p - base) > tol) { dir = normalized(p - base); break; }
        double lo = dot(pts.front() - Point{0, 0}, dir), hi = lo;
        for (const Point& p : pts) {
            double t = dot(p, dir);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        if (lo > -tol || hi < tol) return 0.0;  // 0 not interior to the segment
        return std::min(-lo, hi);
    }
    if (!hull_contains(pts, Point{0, 0}, tol)) return 0.0;
    std::vector<Point> hull = convex_hull(pts);
    double k = std::numeric_limits<double>::infinity();
    const size_t n = hull.size();
    for (size_t i = 0; i < n; ++i)
        k = std::min(k, dist_segment(Point{0, 0}, hull[i], hull[(i + 1) % n]));
    return k;
}

/// Chebyshev center of a convex polygon: the largest-inscribed-ball
/// center and radius. Brute force over edge triples of the tiny LP
///   max t  s.t.  <n_i, c> - t >= b_i  (n_i inward unit normals).
inline std::pair<Point, double> chebyshev_center(const Polygon& poly) {
    const auto& v = poly.vertices;
    const size_t n = v.size();
    std::vector<Vec2> normal(n);
    std::vector<double> offset(n);  // inward distance of c from edge i is <normal_i, c> - offset_i
    for (size_t i = 0; i < n; ++i) {
        Vec2 e = v[(i + 1) % n] - v[i];
        normal[i] = normalized(perp(e));  // inward for a CCW loop
        offset[i] = dot(normal[i], v[i]);
    }
    auto slack = [&](Point c, size_t i) { return dot(normal[i], c) - offset[i]; };

    Point best_c{0, 0};
    double best_t = -std::numeric_limits<double>::infinity();
    auto consider = [&](Point c, double t) {
        if (t <= best_t) return;
        for (size_t i = 0; i < n; ++i)
            if (slack(c, i) < t - 1e-9) return;
        best_t = t;
        best_c = c;
    };
    // three active edges
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                // solve <n_a, c> - t = b_a for a in {i,j,k}
                double A[3][4] = {
                    {normal[i].x, normal[i].y, -1.0, offset[i]},
                    {normal[j].x, normal[j].y, -1.0, offset[j]},
                    {normal[k].x, normal[k].y, -1.0, offset[k]},
                };
                // Gaussian elimination with partial pivoting
                bool ok = true;
                for (int col = 0; col < 3 && ok; ++col) {
                    int piv = col;
                    for (int r = col + 1; r < 3; ++r)
                        if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
                    if (std::abs(A[piv][col]) < 1e-14) { ok = false; break; }
                    std::swap(A[col], A[piv]);
                    for (int r = 0; r < 3; ++r) {
                        if (r == col) continue;
                        double f = A[r][col] / A[col][col];
                        for (int c2 = col; c2 < 4; ++c2) A[r][c2] -= f * A[col][c2];
                    }
                }
                if (!ok) continue;
                Point c{A[0][3] / A[0][0], A[1][3] / A[1][1]};
                double t = A[2][3] / A[2][2];
                if (t > 0) consider(c, t);
            }
    // A bounded polygon always has an optimal basic solution with three
    // active edges, so the triple sweep is exhaustive.
    return {best_c, best_t};
}

}  // namespace distweb
