#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "distweb/distweb.hpp"

using namespace distweb;

namespace {

double dist_to_set(Point p, const std::vector<Point>& S) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& s : S) best = std::min(best, dist(p, s));
    return best;
}

}  // namespace

TEST_CASE("hausdorff distance on hand-computed sets") {
    std::vector<Point> A{{0, 0}, {1, 0}};
    std::vector<Point> B{{0, 0}, {1, 0}, {1, 1}};
    CHECK(hausdorff(A, A) == Catch::Approx(0.0));
    CHECK(hausdorff(A, B) == Catch::Approx(1.0));  // (1,1) is 1 away from A
    std::vector<Point> C{{5, 0}};
    CHECK(hausdorff(A, C) == Catch::Approx(5.0));
    CHECK(hausdorff(C, A) == Catch::Approx(5.0));  // symmetric
}

TEST_CASE("square singular set is the diagonal cross") {
    Domain sq = make_polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}});
    auto S = singular_set(sq, 0.05);
    REQUIRE_FALSE(S.empty());
    for (const Point& p : S) {
        // on a diagonal: |x| == |y|
        CHECK(std::abs(std::abs(p.x) - std::abs(p.y)) < 1e-9);
        CHECK(distance(sq, p).is_singular);
    }
    // both diagonals are covered out to the corners
    CHECK(dist_to_set({1.5, 1.5}, S) < 0.1);
    CHECK(dist_to_set({-1.5, 1.5}, S) < 0.1);
    CHECK(dist_to_set({0, 0}, S) < 0.1);
}

TEST_CASE("rectangle singular set includes the midline") {
    Domain rect = make_polygon({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
    auto S = singular_set(rect, 0.05);
    for (const Point& p : S) CHECK(distance(rect, p).is_singular);
    // midline y = 1 between the corner diagonals
    CHECK(dist_to_set({2, 1}, S) < 0.1);
    CHECK(dist_to_set({1.2, 1}, S) < 0.1);
    // corner bisector
    CHECK(dist_to_set({0.5, 0.5}, S) < 0.1);
}

TEST_CASE("disk and stadium singular sets") {
    auto Sd = singular_set(make_disk({0, 0}, 1.0), 0.05);
    REQUIRE(Sd.size() == 1);
    CHECK(norm(Sd[0]) < 1e-12);
    Domain st = make_stadium({-2, 0}, {2, 0}, 1.0);
    auto Ss = singular_set(st, 0.05);
    REQUIRE_FALSE(Ss.empty());
    for (const Point& p : Ss) {
        CHECK(std::abs(p.y) < 1e-9);
        CHECK(p.x >= -2 - 1e-9);
        CHECK(p.x <= 2 + 1e-9);
    }
    CHECK(dist_to_set({-2, 0}, Ss) < 0.1);
    CHECK(dist_to_set({2, 0}, Ss) < 0.1);
}

TEST_CASE("high ridge: argmax of the distance") {
    auto Hs = high_ridge(make_polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}), 0.05);
    REQUIRE_FALSE(Hs.empty());
    for (const Point& p : Hs) CHECK(norm(p) < 1e-6);
    Domain rect = make_polygon({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
    auto Hr = high_ridge(rect, 0.05);
    REQUIRE_FALSE(Hr.empty());
    for (const Point& p : Hr) {
        CHECK(std::abs(p.y - 1) < 1e-6);
        CHECK(p.x >= 1 - 1e-6);
        CHECK(p.x <= 3 + 1e-6);
        CHECK(distance(rect, p).value == Catch::Approx(1.0).margin(1e-9));
    }
    CHECK(dist_to_set({1, 1}, Hr) < 0.1);
    CHECK(dist_to_set({3, 1}, Hr) < 0.1);
    auto Hst = high_ridge(make_stadium({-2, 0}, {2, 0}, 1.0), 0.05);
    for (const Point& p : Hst) CHECK(std::abs(p.y) < 1e-9);
}

TEST_CASE("high-ridge hull property: 0 in the superdifferential") {
    for (const Domain& dom :
         {make_disk({0, 0}, 1.0), make_stadium({-2, 0}, {2, 0}, 1.0),
          make_polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}),
          make_polygon({{0, 0}, {4, 0}, {4, 2}, {0, 2}})}) {
        for (const Point& p : high_ridge(dom, 0.05))
            CHECK(superdifferential(dom, p).hull_contains_zero);
    }
}

TEST_CASE("gate verdicts") {
    GateReport disk = gate(make_disk({0, 0}, 1.0), 0.02);
    CHECK(disk.verdict);
    CHECK(disk.rho == Catch::Approx(1.0));
    CHECK(disk.hausdorff < 2 * 0.02);

    GateReport st = gate(make_stadium({-2, 0}, {2, 0}, 1.0), 0.02);
    CHECK(st.verdict);
    CHECK(st.rho == Catch::Approx(1.0));

    GateReport sq = gate(make_polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}), 0.02);
    CHECK_FALSE(sq.verdict);
    // cut locus reaches the corners, high ridge is the center
    CHECK(sq.hausdorff == Catch::Approx(2 * std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("cut locus contains the high ridge") {
    for (const Domain& dom :
         {make_disk({0, 0}, 1.0), make_stadium({-2, 0}, {2, 0}, 1.0),
          make_polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}})}) {
        GateReport rep = gate(dom, 0.05);
        for (const Point& p : rep.high_points) CHECK(dist_to_set(p, rep.cut_points) < 2 * 0.05);
    }
}
