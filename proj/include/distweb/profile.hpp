#pragma once

#include <cmath>
#include <vector>

#include "distweb/distance.hpp"
#include "distweb/domain.hpp"
#include "distweb/errors.hpp"

namespace distweb {

/// c0 = 3^(4/3) / 4, the profile normalization constant.
inline const double kC0 = std::pow(3.0, 4.0 / 3.0) / 4.0;

/// One-dimensional profile family g_r(t) = c0 [r^{4/3} - (r-t)^{4/3}]
/// on [0, rho]; r = rho gives the boundary profile g of the candidate
/// web solution.
struct WebProfile {
    double rho = 0.0;
    double r = 0.0;

    WebProfile(double rho_, double r_) : rho(rho_), r(r_) {
        if (!(rho > 0) || r < rho) throw OutOfRange("need 0 < rho <= r");
    }

    double value(double t) const { return kC0 * (std::pow(r, 4.0 / 3.0) - std::pow(r - t, 4.0 / 3.0)); }
    double deriv(double t) const { return std::cbrt(3.0 * (r - t)); }
    double deriv2(double t) const {
        return -1.0 / 3.0 * std::cbrt(3.0) * std::pow(r - t, -2.0 / 3.0);
    }
    /// Boundary slope g'(0) = (3r)^{1/3}.
    double boundary_slope() const { return std::cbrt(3.0 * r); }
};

/// Value (order 0) or derivative (order 1, 2) of g_r at t.
inline double profile_eval(double rho, double r, double t, int order) {
    WebProfile g(rho, r);
    if (t < 0 || t > rho) throw OutOfRange("t outside [0, rho]");
    switch (order) {
        case 0: return g.value(t);
        case 1: return g.deriv(t);
        case 2:
            if (t >= r) throw SingularDerivative("g'' blows up at t = r");
            return g.deriv2(t);
        default: throw OutOfRange("order must be 0, 1 or 2");
    }
}

/// Candidate web solution phi(x) = g(d(x)) with rho the inradius.
inline double phi(const Domain& dom, Point x) {
    double rho = inradius(dom).first;
    WebProfile g(rho, rho);
    return g.value(distance(dom, x).value);
}

/// Radial profile v(x) = g(rho - |x - x0|), the exact solution on the
/// inscribed ball around a high-ridge point x0.
inline double radial_solution(Point x0, double rho, Point x) {
    double s = dist(x, x0);
    if (s > rho + 1e-12) throw OutOfRange("|x - x0| exceeds rho");
    WebProfile g(rho, rho);
    return g.value(rho - std::min(s, rho));
}

struct ProfileBin {
    double t_mid = 0.0;
    double f_hat = 0.0;       // mean of samples in the bin
    double oscillation = 0.0; // detrended spread: max - min of the
                              // residuals around the bin's secant line
    int count = 0;
};

struct FittedProfile {
    std::vector<ProfileBin> bins;
    double web_deviation = 0.0;   // max oscillation over bins
    double left_slope_at_rho = 0.0;  // secant estimate of f'_-(rho)
};

/// Histogram fit of f from (d, u) samples: uniform bins over [0, rho],
/// per-bin mean and detrended oscillation.  The oscillation is measured
/// against the least-squares line of the bin's own samples, so a field
/// that is any smooth function of d alone scores ~0 while a field whose
/// level bands carry genuinely different values scores their spread.
/// The max oscillation therefore witnesses whether u is (numerically) a
/// function of d alone.
inline FittedProfile fit_profile_samples(const std::vector<std::pair<double, double>>& samples,
                                         double rho, int n_bins) {
    if (n_bins < 4) throw OutOfRange("n_bins must be >= 4");
    FittedProfile fit;
    fit.bins.assign(n_bins, {});
    std::vector<double> sd(n_bins, 0.0), su(n_bins, 0.0), sdd(n_bins, 0.0), sdu(n_bins, 0.0);
    auto bin_of = [&](double d) {
        int b = std::min(n_bins - 1, static_cast<int>(d / rho * n_bins));
        return b < 0 ? 0 : b;
    };
    for (auto [d, u] : samples) {
        int b = bin_of(d);
        sd[b] += d;
        su[b] += u;
        sdd[b] += d * d;
        sdu[b] += d * u;
        fit.bins[b].count++;
    }
    std::vector<double> slope(n_bins, 0.0), icept(n_bins, 0.0);
    for (int b = 0; b < n_bins; ++b) {
        int n = fit.bins[b].count;
        if (n == 0) throw EmptyBin("grid too coarse for the requested number of bins");
        fit.bins[b].t_mid = (b + 0.5) * rho / n_bins;
        fit.bins[b].f_hat = su[b] / n;
        double var = sdd[b] - sd[b] * sd[b] / n;
        slope[b] = var > 1e-12 * rho * rho ? (sdu[b] - sd[b] * su[b] / n) / var : 0.0;
        icept[b] = (su[b] - slope[b] * sd[b]) / n;
    }
    std::vector<double> lo(n_bins, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n_bins, -std::numeric_limits<double>::infinity());
    for (auto [d, u] : samples) {
        int b = bin_of(d);
        double r = u - (icept[b] + slope[b] * d);
        lo[b] = std::min(lo[b], r);
        hi[b] = std::max(hi[b], r);
    }
    for (int b = 0; b < n_bins; ++b) {
        fit.bins[b].oscillation = hi[b] - lo[b];
        fit.web_deviation = std::max(fit.web_deviation, fit.bins[b].oscillation);
    }
    const ProfileBin& last = fit.bins[n_bins - 1];
    const ProfileBin& prev = fit.bins[n_bins - 2];
    fit.left_slope_at_rho = (last.f_hat - prev.f_hat) / (last.t_mid - prev.t_mid);
    return fit;
}

}  // namespace distweb
