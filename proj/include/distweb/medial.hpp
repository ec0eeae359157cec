#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "distweb/distance.hpp"
#include "distweb/domain.hpp"

namespace distweb {

struct GateReport {
    double rho = 0.0;
    std::vector<Point> cut_points;
    std::vector<Point> high_points;
    double hausdorff = 0.0;
    bool verdict = false;
    double sampling_step = 0.0;
};

namespace detail {

struct SkeletonSegment {
    Point a;
    Point b;
};

/// Medial axis of a convex polygon via inward edge-offset shrinking:
/// vertices travel along angle bisectors, edges collapse one by one,
/// vertex trajectories are exactly the medial axis segments.
inline std::vector<SkeletonSegment> convex_skeleton(const Polygon& poly) {
    struct Line {
        Vec2 n;     // inward unit normal
        double b;   // <n, x> = b + t at offset t
    };
    const auto& pv = poly.vertices;
    const size_t n0 = pv.size();
    std::vector<Line> edges(n0);
    std::vector<Point> verts(pv);  // verts[i] precedes edges[i]
    for (size_t i = 0; i < n0; ++i) {
        Vec2 nrm = normalized(perp(pv[(i + 1) % n0] - pv[i]));
        edges[i] = {nrm, dot(nrm, pv[i])};
    }

    std::vector<SkeletonSegment> segments;
    for (int guard = 0; guard < 4 * static_cast<int>(n0) && edges.size() >= 3; ++guard) {
        const size_t m = edges.size();
        // bisector velocity of vertex i (between edges i-1 and i)
        std::vector<Vec2> vel(m);
        for (size_t i = 0; i < m; ++i) {
            Vec2 n1 = edges[(i + m - 1) % m].n, n2 = edges[i].n;
            double det = cross(n1, n2);
            if (std::abs(det) < 1e-14) { vel[i] = n1; continue; }
            // solve <w,n1>=1, <w,n2>=1
            vel[i] = Vec2{(n2.y - n1.y) / det, (n1.x - n2.x) / det};
        }
        // first edge-collapse time
        double s_min = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < m; ++i) {
            Vec2 dp = verts[(i + 1) % m] - verts[i];
            Vec2 dw = vel[(i + 1) % m] - vel[i];
            if (norm2(dw) < 1e-24) continue;
            double s = -dot(dp, dw) / norm2(dw);
            if (s < 1e-12) continue;
            if (norm(dp + s * dw) > 1e-7 * std::max(1.0, norm(dp))) continue;
            s_min = std::min(s_min, s);
        }
        if (!std::isfinite(s_min)) break;

        std::vector<Point> next(m);
        for (size_t i = 0; i < m; ++i) {
            next[i] = verts[i] + s_min * vel[i];
            if (dist(verts[i], next[i]) > 1e-12)
                segments.push_back({verts[i], next[i]});
        }
        // drop collapsed edges, merging their endpoint vertices
        std::vector<Line> new_edges;
        std::vector<Point> new_verts;
        for (size_t i = 0; i < m; ++i) {
            Line e = edges[i];
            e.b += s_min;
            if (dist(next[i], next[(i + 1) % m]) < 1e-9) continue;  // collapsed
            new_edges.push_back(e);
            new_verts.push_back(next[i]);
        }
        // all vertices met at a single point
        if (new_edges.size() < 3) {
            if (new_verts.size() == 2 && dist(new_verts[0], new_verts[1]) > 1e-9)
                segments.push_back({new_verts[0], new_verts[1]});
            return segments;
        }
        edges = std::move(new_edges);
        verts = std::move(new_verts);
    }
    return segments;
}

inline void sample_segment(std::vector<Point>& out, Point a, Point b, double step) {
    double len = dist(a, b);
    int k = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int i = 0; i <= k; ++i) out.push_back(a + (static_cast<double>(i) / k) * (b - a));
}

}  // namespace detail

/// Point cloud sampling the singular set at spacing <= step. Exact
/// supports for disk, stadium and convex polygon; each point is checked
/// singular through its reachable gradients.
inline std::vector<Point> singular_set(const Domain& dom, double step) {
    if (!(step > 0)) throw OutOfRange("step must be positive");
    std::vector<Point> raw;
    if (dom.is_disk()) {
        raw.push_back(dom.disk().center);
    } else if (dom.is_stadium()) {
        detail::sample_segment(raw, dom.stadium().a, dom.stadium().b, step);
    } else if (polygon_is_convex(dom.polygon())) {
        for (const auto& seg : detail::convex_skeleton(dom.polygon()))
            detail::sample_segment(raw, seg.a, seg.b, step);
    } else {
        // non-convex: approximate scan, points whose two best distinct-edge
        // projections nearly tie
        Point lo, hi;
        bounding_box(dom, lo, hi);
        int nx = static_cast<int>((hi.x - lo.x) / step) + 1;
        int ny = static_cast<int>((hi.y - lo.y) / step) + 1;
        for (int i = 0; i <= nx; ++i)
            for (int j = 0; j <= ny; ++j) {
                Point p{lo.x + i * step, lo.y + j * step};
                if (!contains(dom, p)) continue;
                const auto& v = dom.polygon().vertices;
                double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
                for (size_t e = 0; e < v.size(); ++e) {
                    double d = dist_segment(p, v[e], v[(e + 1) % v.size()]);
                    if (d < d1) { d2 = d1; d1 = d; }
                    else d2 = std::min(d2, d);
                }
                if (d2 - d1 <= step) raw.push_back(p);
            }
        return raw;  // approximate cloud, no exact singularity check
    }
    std::vector<Point> out;
    for (const Point& p : raw) {
        if (!contains(dom, p)) continue;
        if (distance(dom, p).is_singular) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Point cloud of the high ridge (argmax of the distance function).
inline std::vector<Point> high_ridge(const Domain& dom, double step) {
    if (!(step > 0)) throw OutOfRange("step must be positive");
    auto [rho, witness] = inradius(dom);
    std::vector<Point> out;
    if (dom.is_disk()) {
        out.push_back(dom.disk().center);
        return out;
    }
    if (dom.is_stadium()) {
        detail::sample_segment(out, dom.stadium().a, dom.stadium().b, step);
        return out;
    }
    if (polygon_is_convex(dom.polygon())) {
        std::vector<Point> raw;
        for (const auto& seg : detail::convex_skeleton(dom.polygon()))
            detail::sample_segment(raw, seg.a, seg.b, step);
        raw.push_back(witness);
        for (const Point& p : raw)
            if (rho - distance(dom, p).value <= 1e-9) out.push_back(p);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    out.push_back(witness);
    return out;
}

/// Symmetric Hausdorff distance between point clouds (brute force).
inline double hausdorff(const std::vector<Point>& A, const std::vector<Point>& B) {
    auto one_sided = [](const std::vector<Point>& P, const std::vector<Point>& Q) {
        double h = 0.0;
        for (const Point& p : P) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : Q) best = std::min(best, dist(p, q));
            h = std::max(h, best);
        }
        return h;
    };
    if (A.empty() || B.empty()) return std::numeric_limits<double>::infinity();
    return std::max(one_sided(A, B), one_sided(B, A));
}

/// Cut(Omega) = high(Omega) gate: symmetric Hausdorff distance between
/// the sampled cut locus and high ridge, verdict at threshold 2*step.
inline GateReport gate(const Domain& dom, double step) {
    GateReport rep;
    rep.sampling_step = step;
    rep.rho = inradius(dom).first;
    rep.cut_points = singular_set(dom, step);
    rep.high_points = high_ridge(dom, step);
    rep.hausdorff = hausdorff(rep.cut_points, rep.high_points);
    rep.verdict = rep.hausdorff <= 2.0 * step;
    return rep;
}

}  // namespace distweb
