#include <catch2/catch_amalgamated.hpp>

#include <secluded/geometry.hpp>
#include <secluded/rng.hpp>

using namespace secluded;

namespace {

Point pt(std::vector<long> num, long den = 1) {
    Point p;
    for (long n : num) p.coords.emplace_back(n, den);
    return p;
}

AxisBox unit_cube(const Point& corner) {
    std::vector<Rational> sides(corner.coords.size(), Rational(1));
    return AxisBox::half_open(corner, sides);
}

}  // namespace

TEST_CASE("box volume") {
    CHECK(unit_cube(pt({0, 0})).volume() == Rational(1));
    AxisBox b;
    b.iv.push_back(Interval::half_open(Rational(0), Rational(1, 2)));
    b.iv.push_back(Interval::half_open(Rational(0), Rational(3)));
    CHECK(b.volume() == Rational(3, 2));
    AxisBox empty;
    empty.iv.push_back(Interval::open(Rational(1), Rational(1)));
    empty.iv.push_back(Interval::closed(Rational(0), Rational(5)));
    CHECK(empty.empty());
    CHECK(empty.volume() == Rational(0));
}

TEST_CASE("box/ball intersection on half-open cubes") {
    AxisBox cube = unit_cube(pt({0, 0}));
    CHECK(box_intersects_ball(cube, {pt({1, 1}, 2), Rational(1, 10), BallKind::closed}));
    // ball reaches x=1 but the cube excludes it
    CHECK_FALSE(box_intersects_ball(cube, {pt({3, 1}, 2), Rational(1, 2), BallKind::closed}));
    // overlap [9/10, 1)
    CHECK(box_intersects_ball(
        cube, {Point{{Rational(7, 5), Rational(1, 2)}}, Rational(1, 2), BallKind::closed}));
    CHECK_THROWS_AS(box_intersects_ball(cube, {pt({0}), Rational(1), BallKind::closed}),
                    DimensionMismatch);
}

TEST_CASE("open balls of radius zero are empty") {
    AxisBox cube = unit_cube(pt({0}));
    CHECK_FALSE(box_intersects_ball(cube, {pt({0}), Rational(0), BallKind::open}));
    CHECK(box_intersects_ball(cube, {pt({0}), Rational(0), BallKind::closed}));
}

TEST_CASE("intersection predicate equals Minkowski-sum membership") {
    SplitMix rng(7);
    for (int it = 0; it < 2000; ++it) {
        int d = 1 + static_cast<int>(rng.next_below(3));
        Point corner, p;
        std::vector<Rational> sides;
        for (int i = 0; i < d; ++i) {
            corner.coords.emplace_back(rng.next_range(-8, 8), rng.next_range(1, 4));
            sides.emplace_back(rng.next_range(1, 6), rng.next_range(1, 3));
            p.coords.emplace_back(rng.next_range(-20, 20), rng.next_range(1, 5));
        }
        Rational eps(rng.next_range(0, 9), rng.next_range(1, 4));
        AxisBox cube = AxisBox::half_open(corner, sides);
        for (BallKind kind : {BallKind::closed, BallKind::open}) {
            bool direct = box_intersects_ball(cube, {p, eps, kind});
            bool via_sum = minkowski_inflate(cube, eps, kind).contains(p);
            CHECK(direct == via_sum);
        }
    }
}

TEST_CASE("ball decomposition: B(0,a) + B(0,b) = B(0,a+b) as boxes") {
    SplitMix rng(9);
    for (int it = 0; it < 200; ++it) {
        int d = 1 + static_cast<int>(rng.next_below(3));
        Rational a(rng.next_range(1, 9), rng.next_range(1, 4));
        Rational b(rng.next_range(1, 9), rng.next_range(1, 4));
        Point zero;
        for (int i = 0; i < d; ++i) zero.coords.emplace_back(0);
        for (BallKind kind : {BallKind::closed, BallKind::open}) {
            AxisBox sum = minkowski_inflate(InfBall{zero, a, kind}.as_box(), b, kind);
            AxisBox direct = InfBall{zero, a + b, kind}.as_box();
            REQUIRE(sum.dim() == direct.dim());
            for (int i = 0; i < d; ++i) {
                CHECK(sum.iv[i].lo == direct.iv[i].lo);
                CHECK(sum.iv[i].hi == direct.iv[i].hi);
                CHECK((sum.iv[i].lo_end == direct.iv[i].lo_end));
                CHECK((sum.iv[i].hi_end == direct.iv[i].hi_end));
            }
        }
    }
}

TEST_CASE("volume is additive under axis-aligned splits") {
    SplitMix rng(13);
    for (int it = 0; it < 300; ++it) {
        int d = 1 + static_cast<int>(rng.next_below(3));
        Point corner;
        std::vector<Rational> sides;
        for (int i = 0; i < d; ++i) {
            corner.coords.emplace_back(rng.next_range(-5, 5));
            sides.emplace_back(rng.next_range(1, 7), rng.next_range(1, 3));
        }
        AxisBox box = AxisBox::half_open(corner, sides);
        int axis = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
        // split point strictly inside the axis interval
        Rational t(rng.next_range(1, 7), 8);
        Rational cut = box.iv[axis].lo + t * (box.iv[axis].hi - box.iv[axis].lo);
        AxisBox left = box, right = box;
        left.iv[axis].hi = cut;
        right.iv[axis].lo = cut;
        CHECK(left.volume() + right.volume() == box.volume());
    }
}

TEST_CASE("interval intersection respects closure") {
    Interval a = Interval::half_open(Rational(0), Rational(1));
    Interval b = Interval::closed(Rational(1), Rational(2));
    CHECK(intersect(a, b).empty());  // [0,1) meets [1,2] nowhere
    Interval c = Interval::closed(Rational(0), Rational(1));
    CHECK_FALSE(intersect(c, b).empty());
    CHECK(intersect(c, b).length() == Rational(0));
}
