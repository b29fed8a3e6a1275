#include <ebst/geometry.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ebst;

TEST_CASE("clockwise_angle basic sweeps") {
    UnitVector ex{1, 0}, eyNeg{0, -1}, ey{0, 1};
    CHECK(clockwise_angle(ex, ex) == doctest::Approx(0.0));
    CHECK(clockwise_angle(ex, eyNeg) == doctest::Approx(kPi / 2));
    CHECK(clockwise_angle(ex, ey) == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("clockwise_angle complements to 2*pi") {
    testing::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        UnitVector u = UnitVector::from_angle(rng.uniform(0, kTwoPi));
        UnitVector v = UnitVector::from_angle(rng.uniform(0, kTwoPi));
        double s = clockwise_angle(u, v) + clockwise_angle(v, u);
        bool ok = std::abs(s) <= 1e-9 || std::abs(s - kTwoPi) <= 1e-9;
        CHECK(ok);
    }
}

TEST_CASE("UnitVector validates normalization") {
    CHECK_THROWS_AS(UnitVector(0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(UnitVector::of(Vec2{0, 0}), std::invalid_argument);
    CHECK(UnitVector::of(Vec2{3, 4}).dx == doctest::Approx(0.6));
}

TEST_CASE("arc_arc_intersections: symmetric lens of unit circles") {
    auto c1 = CircularArc::full_circle({0, 0}, 1.0);
    auto c2 = CircularArc::full_circle({1, 0}, 1.0);
    auto r = arc_arc_intersections(c1, c2);
    REQUIRE(r.points.size() == 2);
    CHECK(!r.overlap);
    double s3 = std::sqrt(3.0) / 2.0;
    for (const Point& p : r.points) {
        CHECK(p.x == doctest::Approx(0.5));
        CHECK(std::abs(p.y) == doctest::Approx(s3));
    }
}

TEST_CASE("arc_arc_intersections: external tangency gives one point") {
    auto c1 = CircularArc::full_circle({0, 0}, 1.0);
    auto c2 = CircularArc::full_circle({2, 0}, 1.0);
    auto r = arc_arc_intersections(c1, c2);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].x == doctest::Approx(1.0));
    CHECK(r.points[0].y == doctest::Approx(0.0));
}

TEST_CASE("arc_arc_intersections: identical arcs overlap with no proper points") {
    auto a1 = CircularArc::circle({0, 0}, 1.0, 0.0, kPi);
    auto a2 = CircularArc::circle({0, 0}, 1.0, 0.0, kPi);
    auto r = arc_arc_intersections(a1, a2);
    CHECK(r.overlap);
    CHECK(r.points.empty());
}

TEST_CASE("arc_arc_intersections: same-circle arcs touching at an endpoint") {
    auto a1 = CircularArc::circle({0, 0}, 1.0, 0.0, kPi / 2);
    auto a2 = CircularArc::circle({0, 0}, 1.0, kPi / 2, kPi);
    auto r = arc_arc_intersections(a1, a2);
    CHECK(!r.overlap);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].y == doctest::Approx(1.0));
}

TEST_CASE("arc_arc_intersections: segment cases") {
    auto s1 = CircularArc::segment({0, 0}, {2, 0});
    auto s2 = CircularArc::segment({1, -1}, {1, 1});
    auto r = arc_arc_intersections(s1, s2);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].x == doctest::Approx(1.0));

    auto s3 = CircularArc::segment({1, 0}, {3, 0});
    auto rOverlap = arc_arc_intersections(s1, s3);
    CHECK(rOverlap.overlap);

    auto s4 = CircularArc::segment({2, 0}, {3, 0});
    auto rTouch = arc_arc_intersections(s1, s4);
    CHECK(!rTouch.overlap);
    REQUIRE(rTouch.points.size() == 1);
    CHECK(rTouch.points[0].x == doctest::Approx(2.0));
}

TEST_CASE("arc_arc_intersections: circle vs segment") {
    auto c = CircularArc::full_circle({0, 0}, 1.0);
    auto s = CircularArc::segment({-2, 0}, {2, 0});
    auto r = arc_arc_intersections(c, s);
    REQUIRE(r.points.size() == 2);
    // Tangent segment.
    auto t = CircularArc::segment({-2, 1}, {2, 1});
    auto rt = arc_arc_intersections(c, t);
    REQUIRE(rt.points.size() == 1);
    CHECK(rt.points[0].y == doctest::Approx(1.0));
}

TEST_CASE("arc intersections land on both arcs and are symmetric") {
    testing::Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        Point c1 = rng.point_in(-1, 1), c2 = rng.point_in(-1, 1);
        double r1 = rng.uniform(0.2, 1.5), r2 = rng.uniform(0.2, 1.5);
        double f1 = rng.uniform(0, kTwoPi), w1 = rng.uniform(0.3, kTwoPi);
        double f2 = rng.uniform(0, kTwoPi), w2 = rng.uniform(0.3, kTwoPi);
        auto arcs1 = make_ccw_arcs(c1, r1, f1, f1 + w1);
        auto arcs2 = make_ccw_arcs(c2, r2, f2, f2 + w2);
        for (const auto& a : arcs1) {
            for (const auto& b : arcs2) {
                auto ab = arc_arc_intersections(a, b);
                auto ba = arc_arc_intersections(b, a);
                CHECK(ab.points.size() <= 2);
                CHECK(ab.points.size() == ba.points.size());
                for (const Point& p : ab.points) {
                    CHECK(point_on_arc(p, a));
                    CHECK(point_on_arc(p, b));
                    bool found = false;
                    for (const Point& q : ba.points)
                        if (almost_equal(p, q, 1e-7)) found = true;
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("point_on_arc basics") {
    auto upper = CircularArc::circle({0, 0}, 1.0, 0.0, kPi);
    CHECK(point_on_arc({1, 0}, upper));
    CHECK(!point_on_arc({0, -1}, upper));
    auto seg = CircularArc::segment({0, 0}, {1, 0});
    CHECK(point_on_arc({0.5, 0}, seg));
    CHECK(!point_on_arc({0.5, 0.1}, seg));
}

TEST_CASE("make_ccw_arcs handles ranges crossing the zero cut") {
    auto one = make_ccw_arcs({0, 0}, 1.0, 0.5, 1.5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].sweep() == doctest::Approx(1.0));
    auto wrap = make_ccw_arcs({0, 0}, 1.0, 6.0, 1.0);
    REQUIRE(wrap.size() == 1);
    CHECK(wrap[0].sweep() == doctest::Approx(normalize_angle(1.0 - 6.0)));
    CHECK(almost_equal(wrap[0].start(), {std::cos(6.0), std::sin(6.0)}, 1e-12));
    CHECK(almost_equal(wrap[0].end(), {std::cos(1.0), std::sin(1.0)}, 1e-12));
    CHECK(make_ccw_arcs({0, 0}, 1.0, 1.0, 1.0).empty());
}

TEST_CASE("distance_to_arc respects angular range") {
    auto upper = CircularArc::circle({0, 0}, 1.0, 0.0, kPi);
    CHECK(distance_to_arc({0, 2}, upper) == doctest::Approx(1.0));
    CHECK(distance_to_arc({0, -2}, upper) == doctest::Approx(std::sqrt(5.0)));  // to (+-1, 0)
    auto seg = CircularArc::segment({0, 0}, {2, 0});
    CHECK(distance_to_arc({1, 1}, seg) == doctest::Approx(1.0));
    CHECK(distance_to_arc({3, 0}, seg) == doctest::Approx(1.0));
}

TEST_CASE("arc traversal helpers") {
    auto arc = CircularArc::circle({0, 0}, 2.0, 0.0, kPi / 2);
    CHECK(almost_equal(arc.start(), {2, 0}, 1e-12));
    CHECK(almost_equal(arc.end(), {0, 2}, 1e-12));
    auto tan0 = arc.tangent_at(0.0);
    CHECK(tan0.dx == doctest::Approx(0.0));
    CHECK(tan0.dy == doctest::Approx(1.0));
    auto rev = arc.reversed();
    CHECK(almost_equal(rev.start(), {0, 2}, 1e-12));
    CHECK(rev.curvature() == doctest::Approx(-0.5));

    auto seg = CircularArc::segment({0, 0}, {1, 1});
    CHECK(seg.length() == doctest::Approx(std::sqrt(2.0)));
    CHECK(almost_equal(seg.point_at(0.5), {0.5, 0.5}, 1e-12));
}
