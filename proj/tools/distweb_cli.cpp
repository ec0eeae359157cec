// Command-line front end: domain ingestion, cut-locus/high-ridge
// analysis, distance-estimate certification, the infinity-Laplacian
// solve, comparison against the candidate web solution, and CSV export.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "distweb/distweb.hpp"

namespace fs = std::filesystem;
using namespace distweb;

namespace {

struct RunConfig {
    std::string command;
    std::string domain_file;
    std::string out_dir = ".";
    double step = 0.01;
    double h = 1.0 / 32;
    int m = 3;
    double tol = 1e-8;
    int n_samples = 10000;
    unsigned seed = 42;
    int n_bins = 32;
    std::string x0_s, p_s;
    std::string variant_s = "generic";
    double reach = 0.0;
    std::string expect_gate;
};

Point parse_pair(const std::string& s, const char* what) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ParseError(std::string(what) + " must be 'x,y' (expressions allowed)");
    return {eval_expr(s.substr(0, comma)), eval_expr(s.substr(comma + 1))};
}

EstimateVariant parse_variant(const std::string& s) {
    if (s == "generic") return EstimateVariant::generic;
    if (s == "reach") return EstimateVariant::positive_reach;
    if (s == "convex") return EstimateVariant::convex;
    throw ParseError("variant must be generic, reach or convex");
}

void write_points_csv(const fs::path& path, const std::vector<Point>& pts) {
    std::ofstream out(path);
    out << "x,y\n";
    for (const Point& p : pts) out << fmt17(p.x) << ',' << fmt17(p.y) << '\n';
}

int cmd_analyze(const RunConfig& cfg, const Domain& dom) {
    GateReport rep = gate(dom, cfg.step);
    fs::path out(cfg.out_dir);
    write_gate_report((out / "gate.json").string(), rep);
    write_points_csv(out / "cut.csv", rep.cut_points);
    write_points_csv(out / "high.csv", rep.high_points);
    std::cout << "rho = " << fmt17(rep.rho) << "\nhausdorff = " << fmt17(rep.hausdorff)
              << "\nverdict = " << (rep.verdict ? "true" : "false") << '\n';
    if (!cfg.expect_gate.empty()) {
        bool expected = cfg.expect_gate == "true";
        if (rep.verdict != expected) {
            std::cerr << "gate verdict " << (rep.verdict ? "true" : "false")
                      << " does not match expected " << cfg.expect_gate << '\n';
            return 2;
        }
    }
    return 0;
}

int cmd_certify(const RunConfig& cfg, const Domain& dom) {
    fs::path out(cfg.out_dir);
    struct Job { Point x0; Point p; };
    std::vector<Job> jobs;
    if (!cfg.x0_s.empty()) {
        Point x0 = parse_pair(cfg.x0_s, "--x0");
        Point p{0, 0};
        if (!cfg.p_s.empty()) p = parse_pair(cfg.p_s, "--p");
        else {
            Superdifferential sd = superdifferential(dom, x0);
            for (const Vec2& e : sd.extremals) p = p + e;
            p = (1.0 / static_cast<double>(sd.extremals.size())) * p;
        }
        jobs.push_back({x0, p});
    } else {
        for (const Point& x0 : singular_set(dom, cfg.step)) {
            Superdifferential sd = superdifferential(dom, x0);
            Point p{0, 0};
            if (!sd.hull_contains_zero) {
                for (const Vec2& e : sd.extremals) p = p + e;
                p = (1.0 / static_cast<double>(sd.extremals.size())) * p;
            }
            jobs.push_back({x0, p});
        }
    }
    EstimateVariant variant = parse_variant(cfg.variant_s);
    int k = 0;
    for (const Job& job : jobs) {
        EstimateCertificate cert =
            certificate(dom, job.x0, job.p, variant, cfg.reach);
        MarginReport rep = verify_certificate(dom, cert, cfg.n_samples, cfg.seed);
        json j = certificate_to_json(cert);
        j["min_margin"] = rep.min_margin;
        j["argmin"] = {rep.argmin.x, rep.argmin.y};
        j["n_samples"] = rep.n;
        std::string stem = "cert_" + std::to_string(k);
        std::ofstream((out / (stem + ".json")).string()) << j.dump(2) << '\n';
        write_margin_csv((out / ("margins_" + std::to_string(k) + ".csv")).string(),
                         dom, cert, cfg.n_samples, cfg.seed);
        std::cout << stem << ": K = " << fmt17(cert.K) << ", zeta = (" << fmt17(cert.zeta.x)
                  << ", " << fmt17(cert.zeta.y) << "), min_margin = " << fmt17(rep.min_margin)
                  << '\n';
        ++k;
    }
    return 0;
}

// Coarse grids cannot populate arbitrarily fine distance bins; halve
// the bin count until every bin holds a sample rather than failing.
FittedProfile fit_profile_fallback(const GridSolution& sol, const Domain& dom, int bins) {
    for (;;) {
        try {
            return fit_web_profile(sol, dom, bins);
        } catch (const EmptyBin&) {
            if (bins / 2 < 4) throw;
            bins /= 2;
            std::cerr << "warning: grid too coarse, reducing profile bins to " << bins << '\n';
        }
    }
}

int cmd_solve(const RunConfig& cfg, const Domain& dom) {
    GridSolution sol = solve_dirichlet(dom, cfg.h, cfg.m, cfg.tol);
    fs::path out(cfg.out_dir);
    write_grid_csv((out / "grid.csv").string(), sol, dom);
    PhiComparison cmp = compare_to_phi(sol, dom);
    FittedProfile fit = fit_profile_fallback(sol, dom, cfg.n_bins);
    write_solution_summary((out / "summary.json").string(), sol, cmp, fit);
    std::cout << "iterations = " << sol.iterations << "\nresidual_inf = "
              << fmt17(sol.residual_inf) << "\nconverged = " << (sol.converged ? "true" : "false")
              << '\n';
    return sol.converged ? 0 : 1;
}

int cmd_compare(const RunConfig& cfg, const Domain& dom) {
    fs::path out(cfg.out_dir);
    fs::path grid_file = out / "grid.csv";
    GridSolution sol = fs::exists(grid_file)
                           ? read_grid_csv(grid_file.string(), dom, cfg.h, cfg.m)
                           : solve_dirichlet(dom, cfg.h, cfg.m, cfg.tol);
    PhiComparison cmp = compare_to_phi(sol, dom);
    FittedProfile fit = fit_profile_fallback(sol, dom, cfg.n_bins);
    write_solution_summary((out / "summary.json").string(), sol, cmp, fit);
    write_profile_csv((out / "profile.csv").string(), fit, inradius(dom).first);
    std::cout << "linf_error = " << fmt17(cmp.linf_error) << "\nweb_deviation = "
              << fmt17(fit.web_deviation) << "\nboundary_slope_est = "
              << fmt17(cmp.boundary_slope_est) << '\n';
    return 0;
}

int cmd_export(const RunConfig& cfg, const Domain& dom) {
    fs::path out(cfg.out_dir);
    Point lo, hi;
    bounding_box(dom, lo, hi);
    std::vector<Point> cloud;
    for (double y = lo.y; y <= hi.y + 1e-12; y += cfg.step)
        for (double x = lo.x; x <= hi.x + 1e-12; x += cfg.step) {
            Point p{x, y};
            if (contains(dom, p)) cloud.push_back(p);
        }
    write_cloud_csv((out / "cloud.csv").string(), dom, cloud);
    GateReport rep = gate(dom, cfg.step);
    write_points_csv(out / "cut.csv", rep.cut_points);
    write_points_csv(out / "high.csv", rep.high_points);
    std::cout << "wrote " << cloud.size() << " cloud points\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"distance-function web geometry toolkit"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* sub) {
        // long-only help so the --h grid-spacing flag stays available
        sub->set_help_flag("--help", "print this help message and exit");
        sub->add_option("--domain", cfg.domain_file, "domain spec (JSON)")->required();
        sub->add_option("--step", cfg.step, "sampling step")->check(CLI::PositiveNumber);
        sub->add_option("--h", cfg.h, "grid spacing")->check(CLI::PositiveNumber);
        sub->add_option("--m", cfg.m, "stencil radius")->check(CLI::PositiveNumber);
        sub->add_option("--tol", cfg.tol, "solver tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--samples", cfg.n_samples, "verification samples")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "sampling seed");
        sub->add_option("--bins", cfg.n_bins, "profile bins")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out_dir, "output directory");
    };
    CLI::App* analyze = app.add_subcommand("analyze", "cut locus vs high ridge gate");
    add_common(analyze);
    analyze->add_option("--expect-gate", cfg.expect_gate, "assert the gate verdict")
        ->check(CLI::IsMember({"true", "false"}));
    CLI::App* certify = app.add_subcommand("certify", "singular-point distance estimates");
    add_common(certify);
    certify->add_option("--x0", cfg.x0_s, "singular point 'x,y'");
    certify->add_option("--p", cfg.p_s, "superdifferential vector 'x,y'");
    certify->add_option("--variant", cfg.variant_s, "estimate variant")
        ->check(CLI::IsMember({"generic", "reach", "convex"}));
    certify->add_option("--reach", cfg.reach, "positive reach R");
    CLI::App* solve = app.add_subcommand("solve", "infinity-Laplacian Dirichlet solve");
    add_common(solve);
    CLI::App* compare = app.add_subcommand("compare", "compare solve against the web candidate");
    add_common(compare);
    CLI::App* exp = app.add_subcommand("export", "distance cloud and locus CSVs");
    add_common(exp);

    CLI11_PARSE(app, argc, argv);

    // thread count env var: accepted for interface stability; every
    // computation is deterministic and independent of it
    if (const char* t = std::getenv("DISTWEB_THREADS")) (void)t;

    try {
        Domain dom = load_domain(cfg.domain_file);
        fs::create_directories(cfg.out_dir);
        if (app.got_subcommand(analyze)) return cmd_analyze(cfg, dom);
        if (app.got_subcommand(certify)) return cmd_certify(cfg, dom);
        if (app.got_subcommand(solve)) return cmd_solve(cfg, dom);
        if (app.got_subcommand(compare)) return cmd_compare(cfg, dom);
        if (app.got_subcommand(exp)) return cmd_export(cfg, dom);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
