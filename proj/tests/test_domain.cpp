#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "distweb/distweb.hpp"

using namespace distweb;

namespace {

// independent membership oracle for convex CCW polygons: left of every edge
bool convex_contains_oracle(const std::vector<Point>& v, Point p) {
    for (size_t i = 0; i < v.size(); ++i) {
        Point a = v[i], b = v[(i + 1) % v.size()];
        if (cross(b - a, p - a) <= 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("expression parser evaluates exact constants") {
    CHECK(eval_expr("sqrt(2)") == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(eval_expr("-2*sqrt(2)") == Catch::Approx(-2 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(eval_expr("cbrt(27)") == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(eval_expr("3*(1+1)/2") == Catch::Approx(3.0));
    CHECK(eval_expr(" pi / 2 ") == Catch::Approx(std::acos(0.0)));
    CHECK(eval_expr("1e-3+2") == Catch::Approx(2.001));
    CHECK_THROWS_AS(eval_expr("sqrt(2"), ParseError);
    CHECK_THROWS_AS(eval_expr("2+"), ParseError);
    CHECK_THROWS_AS(eval_expr("foo(2)"), ParseError);
    CHECK_THROWS_AS(eval_expr(""), ParseError);
}

TEST_CASE("polygon construction normalizes orientation") {
    // clockwise square input
    Domain cw = make_polygon({{-2, -2}, {-2, 2}, {2, 2}, {2, -2}});
    const auto& v = cw.polygon().vertices;
    REQUIRE(v.size() == 4);
    double area2 = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        Point a = v[i], b = v[(i + 1) % v.size()];
        area2 += cross(a, b);
    }
    CHECK(area2 == Catch::Approx(32.0));  // positive: counterclockwise
}

TEST_CASE("polygon construction is idempotent") {
    Domain d = make_polygon({{0, 0}, {3, 0}, {3, 1}, {1, 2}});
    Domain d2 = make_polygon(d.polygon().vertices);
    REQUIRE(d2.polygon().vertices.size() == d.polygon().vertices.size());
    for (size_t i = 0; i < d.polygon().vertices.size(); ++i) {
        CHECK(d2.polygon().vertices[i].x == d.polygon().vertices[i].x);
        CHECK(d2.polygon().vertices[i].y == d.polygon().vertices[i].y);
    }
}

TEST_CASE("polygon validation rejects degenerate input") {
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}}), DegenerateBoundary);
    // duplicate within 1e-12 collapses, leaving 2 distinct vertices
    CHECK_THROWS_AS(make_polygon({{0, 0}, {0, 5e-13}, {1, 0}}), DegenerateBoundary);
    // collinear
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}, {2, 0}}), DegenerateBoundary);
    // bowtie self-intersection
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), DegenerateBoundary);
}

TEST_CASE("disk and stadium validation") {
    CHECK_THROWS_AS(make_disk({0, 0}, 0.0), DegenerateBoundary);
    CHECK_THROWS_AS(make_disk({0, 0}, -1.0), DegenerateBoundary);
    CHECK_THROWS_AS(make_stadium({0, 0}, {0, 0}, 1.0), DegenerateBoundary);
    CHECK_THROWS_AS(make_stadium({0, 0}, {1, 0}, 0.0), DegenerateBoundary);
}

TEST_CASE("polygon membership against edge-side oracle") {
    Domain sq = make_polygon({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}});
    Domain tri = make_polygon({{0, 0}, {4, 1}, {1, 3}});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 5.0);
    for (int k = 0; k < 20000; ++k) {
        Point p{U(rng), U(rng)};
        CHECK(contains(sq, p) == convex_contains_oracle(sq.polygon().vertices, p));
        CHECK(contains(tri, p) == convex_contains_oracle(tri.polygon().vertices, p));
    }
    // boundary points are outside the open set
    CHECK_FALSE(contains(sq, {2, 0}));
    CHECK_FALSE(contains(sq, {2, 2}));
    CHECK(contains(sq, {2 - 1e-9, 0}));
}

TEST_CASE("nonconvex polygon membership by crossing parity") {
    // L-shape
    Domain L = make_polygon({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
    CHECK(contains(L, {0.5, 0.5}));
    CHECK(contains(L, {2.5, 0.5}));
    CHECK(contains(L, {0.5, 2.5}));
    CHECK_FALSE(contains(L, {2.0, 2.0}));
    CHECK_FALSE(polygon_is_convex(L.polygon()));
    CHECK(polygon_is_convex(make_polygon({{0, 0}, {1, 0}, {0, 1}}).polygon()));
}

TEST_CASE("stadium membership against segment-distance oracle") {
    Domain st = make_stadium({-2, 0}, {2, 0}, 1.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> X(-4.0, 4.0), Y(-2.0, 2.0);
    for (int k = 0; k < 20000; ++k) {
        Point p{X(rng), Y(rng)};
        bool inside = dist_segment(p, {-2, 0}, {2, 0}) < 1.0;
        CHECK(contains(st, p) == inside);
    }
    // tilted stadium
    Domain st2 = make_stadium({0, 0}, {3, 4}, 0.5);
    for (int k = 0; k < 20000; ++k) {
        Point p{X(rng) + 1.5, Y(rng) * 2 + 2};
        bool inside = dist_segment(p, {0, 0}, {3, 4}) < 0.5;
        CHECK(contains(st2, p) == inside);
    }
}

TEST_CASE("disk membership is the open ball") {
    Domain dk = make_disk({1, -1}, 2.0);
    CHECK(contains(dk, {1, -1}));
    CHECK(contains(dk, {2.9, -1}));
    CHECK_FALSE(contains(dk, {3, -1}));
    CHECK_FALSE(contains(dk, {3.1, -1}));
}

TEST_CASE("bounding boxes are tight") {
    Point lo, hi;
    bounding_box(make_disk({1, 2}, 3), lo, hi);
    CHECK(lo.x == Catch::Approx(-2));
    CHECK(hi.y == Catch::Approx(5));
    bounding_box(make_stadium({-2, 0}, {2, 0}, 1), lo, hi);
    CHECK(lo.x == Catch::Approx(-3));
    CHECK(hi.x == Catch::Approx(3));
    CHECK(hi.y == Catch::Approx(1));
    bounding_box(make_polygon({{0, 0}, {4, 1}, {1, 3}}), lo, hi);
    CHECK(lo.x == Catch::Approx(0));
    CHECK(hi.x == Catch::Approx(4));
    CHECK(hi.y == Catch::Approx(3));
}

TEST_CASE("vector helpers") {
    Vec2 a{3, 4};
    CHECK(norm(a) == Catch::Approx(5.0));
    CHECK(dot(a, {1, 2}) == Catch::Approx(11.0));
    CHECK(cross({1, 0}, {0, 1}) == Catch::Approx(1.0));
    Vec2 n = normalized(a);
    CHECK(norm(n) == Catch::Approx(1.0));
    CHECK(dist_segment({0, 1}, {-1, 0}, {1, 0}) == Catch::Approx(1.0));
    CHECK(dist_segment({5, 0}, {-1, 0}, {1, 0}) == Catch::Approx(4.0));
}
