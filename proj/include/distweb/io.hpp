#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "distweb/distance.hpp"
#include "distweb/domain.hpp"
#include "distweb/errors.hpp"
#include "distweb/estimate.hpp"
#include "distweb/expr.hpp"
#include "distweb/medial.hpp"
#include "distweb/solver.hpp"

namespace distweb {

using json = nlohmann::ordered_json;

/// 17 significant digits: lossless double round-trip.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline double json_number(const json& j) {
    if (j.is_string()) return eval_expr(j.get<std::string>());
    if (j.is_number()) return j.get<double>();
    throw ParseError("expected a number or expression string");
}

inline Point json_point(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [x, y]");
    return {json_number(j[0]), json_number(j[1])};
}

}  // namespace detail

/// Domain specification: {"kind": "polygon"|"disk"|"stadium", ...} with
/// coordinates given as numbers or exact-constant expression strings
/// such as "sqrt(2)" or "-2*sqrt(2)".
inline Domain parse_domain(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("domain needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    std::string label = j.value("label", kind);
    if (kind == "polygon") {
        std::vector<Point> verts;
        for (const auto& v : j.at("vertices")) verts.push_back(detail::json_point(v));
        return make_polygon(std::move(verts), label);
    }
    if (kind == "disk")
        return make_disk(detail::json_point(j.at("center")),
                         detail::json_number(j.at("radius")), label);
    if (kind == "stadium")
        return make_stadium(detail::json_point(j.at("a")), detail::json_point(j.at("b")),
                            detail::json_number(j.at("r")), label);
    throw ParseError("unknown domain kind '" + kind + "'");
}

inline Domain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open domain file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("domain file " + path + ": " + e.what());
    }
    return parse_domain(j);
}

inline json domain_to_json(const Domain& dom) {
    json j;
    j["label"] = dom.label;
    if (dom.is_disk()) {
        j["kind"] = "disk";
        j["center"] = {dom.disk().center.x, dom.disk().center.y};
        j["radius"] = dom.disk().radius;
    } else if (dom.is_stadium()) {
        j["kind"] = "stadium";
        j["a"] = {dom.stadium().a.x, dom.stadium().a.y};
        j["b"] = {dom.stadium().b.x, dom.stadium().b.y};
        j["r"] = dom.stadium().r;
    } else {
        j["kind"] = "polygon";
        j["vertices"] = json::array();
        for (const Point& p : dom.polygon().vertices) j["vertices"].push_back({p.x, p.y});
    }
    return j;
}

/// Point cloud CSV: x, y, d, n_grads.
inline void write_cloud_csv(const std::string& path, const Domain& dom,
                            const std::vector<Point>& cloud) {
    std::ofstream out(path);
    out << "x,y,d,n_grads\n";
    for (const Point& p : cloud) {
        DistanceEval ev = distance(dom, p);
        size_t ng = ev.grad_arc ? 0 : ev.grads.size();
        out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(ev.value) << ',' << ng << '\n';
    }
}

inline void write_gate_report(const std::string& path, const GateReport& rep) {
    json j;
    j["rho"] = rep.rho;
    j["hausdorff"] = rep.hausdorff;
    j["verdict"] = rep.verdict;
    j["step"] = rep.sampling_step;
    j["n_cut_points"] = rep.cut_points.size();
    j["n_high_points"] = rep.high_points.size();
    std::ofstream(path) << j.dump(2) << '\n';
}

inline json certificate_to_json(const EstimateCertificate& cert) {
    json j;
    j["x0"] = {cert.x0.x, cert.x0.y};
    j["p"] = {cert.p.x, cert.p.y};
    j["extremals"] = json::array();
    for (const Vec2& e : cert.extremals) j["extremals"].push_back({e.x, e.y});
    j["lambdas"] = cert.lambdas;
    j["K"] = cert.K;
    j["zeta"] = {cert.zeta.x, cert.zeta.y};
    j["variant"] = to_string(cert.variant);
    j["R"] = cert.reach;
    return j;
}

/// Margin CSV over verification samples: x, y, d, bound, margin.
inline void write_margin_csv(const std::string& path, const Domain& dom,
                             const EstimateCertificate& cert, int n_samples,
                             unsigned seed) {
    double d0 = distance(dom, cert.x0).value;
    Point lo, hi;
    bounding_box(dom, lo, hi);
    std::ofstream out(path);
    out << "x,y,d,bound,margin\n";
    int n = 0;
    unsigned long long idx = 1ull + static_cast<unsigned long long>(seed) * 7919ull;
    while (n < n_samples) {
        Point u = halton(idx++);
        Point x{lo.x + u.x * (hi.x - lo.x), lo.y + u.y * (hi.y - lo.y)};
        if (!contains(dom, x)) continue;
        ++n;
        double d = distance(dom, x).value;
        double b = bound_value(cert, d0, x);
        out << fmt17(x.x) << ',' << fmt17(x.y) << ',' << fmt17(d) << ',' << fmt17(b) << ','
            << fmt17(b - d) << '\n';
    }
}

/// Grid dump: one row per interior node, with lattice indices so the
/// solution can be re-ingested against a freshly built grid.
inline void write_grid_csv(const std::string& path, const GridSolution& sol,
                           const Domain& dom) {
    const Grid& g = sol.grid;
    double rho = inradius(dom).first;
    WebProfile prof(rho, rho);
    std::ofstream out(path);
    out << "# h=" << fmt17(g.h) << " m=" << g.m << " nx=" << g.nx << " ny=" << g.ny
        << " origin_x=" << fmt17(g.origin.x) << " origin_y=" << fmt17(g.origin.y) << '\n';
    out << "i,j,x,y,u,d,phi\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int id = g.node_index[static_cast<size_t>(j) * g.nx + i];
            if (id < 0) continue;
            out << i << ',' << j << ',' << fmt17(g.pos[id].x) << ',' << fmt17(g.pos[id].y)
                << ',' << fmt17(sol.u[id]) << ',' << fmt17(g.dval[id]) << ','
                << fmt17(prof.value(g.dval[id])) << '\n';
        }
}

/// Reads u back from a grid dump into a freshly built grid (same domain,
/// h and m). Lattice indices in the file must match the rebuilt grid.
inline GridSolution read_grid_csv(const std::string& path, const Domain& dom, double h, int m) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open grid dump: " + path);
    GridSolution sol;
    sol.grid = make_grid(dom, h, m);
    sol.u.assign(sol.grid.n_interior(), 0.0);
    std::string line;
    std::getline(in, line);  // header comment
    std::getline(in, line);  // column names
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(row, tok, ',')) cols.push_back(tok);
        if (cols.size() < 5) continue;
        int i = std::stoi(cols[0]), j = std::stoi(cols[1]);
        if (i < 0 || j < 0 || i >= sol.grid.nx || j >= sol.grid.ny)
            throw ParseError("lattice index out of range in grid dump");
        int id = sol.grid.node_index[static_cast<size_t>(j) * sol.grid.nx + i];
        if (id < 0) throw ParseError("grid dump row does not match an interior node");
        sol.u[id] = std::stod(cols[4]);
    }
    sol.residual_inf = residual_inf_norm(sol.grid, sol.u);
    return sol;
}

inline void write_solution_summary(const std::string& path, const GridSolution& sol,
                                   const PhiComparison& cmp, const FittedProfile& fit) {
    json j;
    j["h"] = sol.grid.h;
    j["m"] = sol.grid.m;
    j["iterations"] = sol.iterations;
    j["residual_inf"] = sol.residual_inf;
    j["converged"] = sol.converged;
    j["linf_error"] = cmp.linf_error;
    j["l2_error"] = cmp.l2_error;
    j["boundary_slope_est"] = cmp.boundary_slope_est;
    j["web_deviation"] = fit.web_deviation;
    j["left_slope_at_rho"] = fit.left_slope_at_rho;
    std::ofstream(path) << j.dump(2) << '\n';
}

/// Fitted profile CSV: t_mid, f_hat, oscillation, g_reference.
inline void write_profile_csv(const std::string& path, const FittedProfile& fit, double rho) {
    WebProfile prof(rho, rho);
    std::ofstream out(path);
    out << "t_mid,f_hat,oscillation,g_reference\n";
    for (const ProfileBin& b : fit.bins)
        out << fmt17(b.t_mid) << ',' << fmt17(b.f_hat) << ',' << fmt17(b.oscillation) << ','
            << fmt17(prof.value(b.t_mid)) << '\n';
}

}  // namespace distweb
