#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "distweb/convex.hpp"
#include "distweb/distance.hpp"
#include "distweb/domain.hpp"

namespace distweb {

enum class EstimateVariant { generic, positive_reach, convex };

inline const char* to_string(EstimateVariant v) {
    switch (v) {
        case EstimateVariant::generic: return "generic";
        case EstimateVariant::positive_reach: return "positive_reach";
        case EstimateVariant::convex: return "convex";
    }
    return "?";
}

/// Witness data for the singular-point distance bound: a convex
/// decomposition of p over reachable gradients, the transversal gain K
/// and direction zeta, and the curvature relaxation (reach) in use.
struct EstimateCertificate {
    Point x0;
    Vec2 p;
    std::vector<Vec2> extremals;  // decomposition support, angle-sorted
    std::vector<double> lambdas;  // strictly positive, sum 1
    double K = 0.0;
    Vec2 zeta;
    double reach = 0.0;  // only meaningful for positive_reach
    EstimateVariant variant = EstimateVariant::generic;
};

struct MarginReport {
    double min_margin = 0.0;
    Point argmin;
    int n = 0;
};

namespace detail {

inline bool domain_is_convex(const Domain& dom) {
    if (dom.is_disk() || dom.is_stadium()) return true;
    return polygon_is_convex(dom.polygon());
}

inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

struct Decomposition {
    std::vector<Vec2> support;
    std::vector<double> lambdas;
    double K = 0.0;
};

/// Caratheodory in the plane: search pairs then triples of extremals
/// for a strictly positive convex decomposition of p; among valid
/// decompositions keep the one with the largest K.
inline std::optional<Decomposition> decompose(const std::vector<Vec2>& extremals, Vec2 p) {
    std::optional<Decomposition> best;
    auto consider = [&](std::vector<Vec2> sup, std::vector<double> lam) {
        std::vector<Point> shifted;
        for (const Vec2& e : sup) shifted.push_back(e - p);
        double K = origin_to_hull_boundary(shifted);
        if (!(K > 0)) return;
        if (!best || K > best->K + 1e-15)
            best = Decomposition{std::move(sup), std::move(lam), K};
    };
    const size_t n = extremals.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vec2 a = extremals[i], b = extremals[j];
            Vec2 ab = a - b;
            if (norm2(ab) < 1e-24) continue;
            if (std::abs(cross(p - b, ab)) > 1e-10) continue;  // p off the segment line
            double lam = dot(p - b, ab) / norm2(ab);
            if (lam < 1e-12 || lam > 1.0 - 1e-12) continue;
            consider({a, b}, {lam, 1.0 - lam});
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                Vec2 a = extremals[i], b = extremals[j], c = extremals[k];
                double det = cross(b - a, c - a);
                if (std::abs(det) < 1e-14) continue;
                // barycentric coordinates of p
                double l1 = cross(b - p, c - p) / det;
                double l2 = cross(c - p, a - p) / det;
                double l3 = 1.0 - l1 - l2;
                if (l1 < 1e-12 || l2 < 1e-12 || l3 < 1e-12) continue;
                consider({a, b, c}, {l1, l2, l3});
            }
    return best;
}

}  // namespace detail

/// Builds the estimate certificate at a singular point x0 for a chosen
/// p in the open superdifferential. For continuum gradient sets (disk
/// center, stadium cap tip) a finite extremal subset must be supplied.
inline EstimateCertificate certificate(const Domain& dom, Point x0, Vec2 p,
                                       EstimateVariant variant,
                                       double reach = 0.0,
                                       const std::vector<Vec2>& extremal_override = {}) {
    DistanceEval ev = distance(dom, x0);
    if (!ev.is_singular) throw NotSingular("x0 is not a singular point of the distance");
    if (variant == EstimateVariant::convex && !detail::domain_is_convex(dom))
        throw InvalidReach("convex variant requires a convex domain");
    if (variant == EstimateVariant::positive_reach) {
        if (!(reach > 0)) throw InvalidReach("positive_reach variant requires R > 0");
        if (dom.is_polygon() && !polygon_is_convex(dom.polygon()))
            throw InvalidReach("non-convex polygons have zero reach");
    }

    std::vector<Vec2> extremals = extremal_override.empty() ? ev.grads : extremal_override;
    if (extremals.size() < 2)
        throw NotInSuperdifferential(
            "continuum gradient set: supply a finite extremal subset");
    if (norm(p) >= 1.0 - 1e-12)
        throw NotInSuperdifferential("p must satisfy |p| < 1 strictly");
    {
        std::vector<Point> pts(extremals.begin(), extremals.end());
        if (!hull_contains(pts, p, 1e-9))
            throw NotInSuperdifferential("p outside conv of the reachable gradients");
    }

    std::sort(extremals.begin(), extremals.end(), [](Vec2 a, Vec2 b) {
        return detail::angle_of(a) < detail::angle_of(b);
    });
    auto dec = detail::decompose(extremals, p);
    if (!dec) throw NotInSuperdifferential("no strictly positive decomposition of p");
    std::sort(dec->support.begin(), dec->support.end(), [](Vec2 a, Vec2 b) {
        return detail::angle_of(a) < detail::angle_of(b);
    });
    // recompute weights in sorted support order
    auto redec = detail::decompose(dec->support, p);
    if (redec) dec = redec;

    EstimateCertificate cert;
    cert.x0 = x0;
    cert.p = p;
    cert.extremals = dec->support;
    cert.lambdas = dec->lambdas;
    cert.K = dec->K;
    cert.variant = variant;
    cert.reach = variant == EstimateVariant::positive_reach ? reach : 0.0;

    // zeta: first angle-sorted extremal direction, preferring one
    // transversal to p
    Vec2 zeta = normalized(cert.extremals.front() - p);
    if (norm(p) > 1e-12) {
        for (const Vec2& e : cert.extremals) {
            Vec2 z = normalized(e - p);
            if (std::abs(dot(z, p)) > 1e-12) { zeta = z; break; }
        }
    }
    cert.zeta = zeta;
    return cert;
}

/// Right-hand side of the singular-point estimate at x, around a
/// certificate anchored at distance value d0 = d(x0).
inline double bound_value(const EstimateCertificate& cert, double d0, Point x) {
    Vec2 dx = x - cert.x0;
    double v = d0 + dot(cert.p, dx) - cert.K * std::abs(dot(cert.zeta, dx));
    switch (cert.variant) {
        case EstimateVariant::convex:
            break;  // no quadratic term
        case EstimateVariant::positive_reach:
            v += norm2(dx) / (2.0 * (d0 + cert.reach));
            break;
        case EstimateVariant::generic:
            v += norm2(dx) / (2.0 * d0);
            break;
    }
    return v;
}

/// Halton low-discrepancy point, bases 2 and 3.
inline Point halton(unsigned long long i) {
    auto radical = [](unsigned long long k, unsigned base) {
        double f = 1.0, r = 0.0;
        while (k) {
            f /= base;
            r += f * (k % base);
            k /= base;
        }
        return r;
    };
    return {radical(i, 2), radical(i, 3)};
}

/// Samples the domain with a seeded Halton sequence and reports the
/// worst margin bound(x) - d(x). Nonnegative margins (to rounding)
/// certify the estimate.
inline MarginReport verify_certificate(const Domain& dom, const EstimateCertificate& cert,
                                       int n_samples, unsigned seed) {
    double d0 = distance(dom, cert.x0).value;
    Point lo, hi;
    bounding_box(dom, lo, hi);
    MarginReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    unsigned long long idx = 1ull + static_cast<unsigned long long>(seed) * 7919ull;
    while (rep.n < n_samples) {
        Point u = halton(idx++);
        Point x{lo.x + u.x * (hi.x - lo.x), lo.y + u.y * (hi.y - lo.y)};
        if (!contains(dom, x)) continue;
        ++rep.n;
        double margin = bound_value(cert, d0, x) - distance(dom, x).value;
        if (margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.argmin = x;
        }
    }
    return rep;
}

}  // namespace distweb
