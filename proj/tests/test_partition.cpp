#include <catch2/catch_amalgamated.hpp>

#include <secluded/json_io.hpp>
#include <secluded/partition.hpp>
#include <secluded/rng.hpp>

using namespace secluded;

namespace {

Point pt(std::initializer_list<const char*> cs) {
    Point p;
    for (const char* c : cs) p.coords.push_back(Rational::from_string(c));
    return p;
}

Point random_point(SplitMix& rng, int d, long span = 40) {
    Point p;
    for (int i = 0; i < d; ++i)
        p.coords.emplace_back(rng.next_range(-span, span), rng.next_range(1, 12));
    return p;
}

}  // namespace

TEST_CASE("grid member_of floors per coordinate") {
    auto spec = PartitionSpec::grid(2);
    MemberId id = member_of(spec, pt({"3/10", "-6/5"}));
    CHECK(id.indices == std::vector<Integer>{Integer(0), Integer(-2)});
    CHECK(corner_of(spec, id) == pt({"0", "-2"}));
    CHECK(center_of(spec, id) == pt({"1/2", "-3/2"}));
}

TEST_CASE("layered member_of follows the peeling recurrence") {
    auto spec = PartitionSpec::layered(2, {Rational(1, 2)});
    MemberId id = member_of(spec, pt({"3/5", "3/2"}));
    CHECK(corner_of(spec, id) == pt({"1/2", "1"}));
    CHECK(center_of(spec, id) == pt({"1", "3/2"}));

    auto spec3 = PartitionSpec::layered(3, {Rational(1, 3), Rational(1, 3)});
    CHECK(corner_of(spec3, member_of(spec3, pt({"0", "0", "0"}))) == pt({"0", "0", "0"}));
}

TEST_CASE("scaled corners and centers") {
    auto spec = PartitionSpec::scaled(PartitionSpec::grid(1), Rational(1, 2));
    MemberId id;
    id.indices.push_back(Integer(3));
    CHECK(corner_of(spec, id) == pt({"3/2"}));
    CHECK(center_of(spec, id) == pt({"7/4"}));
    CHECK(corner_of(spec, member_of(spec, pt({"3/4"}))) == pt({"1/2"}));
}

TEST_CASE("scale composes and scale(spec, 1) is behavioral identity") {
    auto base = PartitionSpec::layered(2, {Rational(1, 2)});
    auto twice = scale(base, Rational(2));
    SplitMix rng(3);
    for (int i = 0; i < 200; ++i) {
        Point x = random_point(rng, 2);
        Point doubled = x;
        for (auto& c : doubled.coords) c *= Rational(2);
        Point corner_scaled = corner_of(twice, member_of(twice, doubled));
        Point corner_base = corner_of(base, member_of(base, x));
        for (auto& c : corner_base.coords) c *= Rational(2);
        CHECK(corner_scaled == corner_base);

        auto same = scale(base, Rational(1));
        CHECK(member_of(same, x) == member_of(base, x));
    }
    CHECK(corner_of(twice, member_of(twice, pt({"6/5", "3"}))) == pt({"1", "2"}));
}

TEST_CASE("product evaluates blockwise") {
    auto prod = PartitionSpec::product(
        {PartitionSpec::layered(2, {Rational(1, 2)}), PartitionSpec::grid(1)});
    CHECK(prod.dim() == 3);
    MemberId id = member_of(prod, pt({"3/5", "3/2", "1/4"}));
    CHECK(corner_of(prod, id) == pt({"1/2", "1", "0"}));

    auto grid_like = PartitionSpec::product({PartitionSpec::grid(1), PartitionSpec::grid(1)});
    auto grid = PartitionSpec::grid(2);
    SplitMix rng(5);
    for (int i = 0; i < 200; ++i) {
        Point x = random_point(rng, 2);
        CHECK(corner_of(grid_like, member_of(grid_like, x)) == corner_of(grid, member_of(grid, x)));
    }
}

TEST_CASE("partition axiom: containment and agreement") {
    SplitMix rng(17);
    std::vector<PartitionSpec> specs = {
        PartitionSpec::grid(3),
        PartitionSpec::layered(3),
        PartitionSpec::layered(2, {Rational(1, 2)}),
        PartitionSpec::scaled(PartitionSpec::layered(2), Rational(3, 4)),
        PartitionSpec::product({PartitionSpec::layered(2), PartitionSpec::grid(1)}),
    };
    for (const auto& spec : specs) {
        for (int i = 0; i < 150; ++i) {
            Point x = random_point(rng, spec.dim());
            MemberId id = member_of(spec, x);
            CHECK(contains(spec, id, x));
            Point y = random_point(rng, spec.dim(), 6);
            CHECK(contains(spec, id, y) == (member_of(spec, y) == id));
        }
    }
}

TEST_CASE("distinct members have disjoint cubes") {
    SplitMix rng(23);
    auto spec = PartitionSpec::layered(3);
    for (int i = 0; i < 200; ++i) {
        Point x = random_point(rng, 3, 8);
        Point y = random_point(rng, 3, 8);
        MemberId a = member_of(spec, x), b = member_of(spec, y);
        if (a == b) continue;
        CHECK_FALSE(boxes_intersect(cube_of(spec, a), cube_of(spec, b)));
    }
}

TEST_CASE("member_of(corner_of(id)) round-trips") {
    SplitMix rng(29);
    std::vector<PartitionSpec> specs = {
        PartitionSpec::grid(2), PartitionSpec::layered(4),
        PartitionSpec::product({PartitionSpec::layered(2), PartitionSpec::layered(2)}),
        PartitionSpec::scaled(PartitionSpec::layered(3), Rational(2, 3))};
    for (const auto& spec : specs) {
        for (int i = 0; i < 100; ++i) {
            MemberId id = member_of(spec, random_point(rng, spec.dim(), 10));
            CHECK(member_of(spec, corner_of(spec, id)) == id);
        }
    }
}

TEST_CASE("products of unit-cube specs stay unit cubes") {
    auto prod = PartitionSpec::product({PartitionSpec::layered(2), PartitionSpec::grid(2)});
    CHECK(prod.is_unit_cube());
    for (const auto& s : prod.sides()) CHECK(s == Rational(1));
    CHECK_FALSE(PartitionSpec::scaled(prod, Rational(1, 2)).is_unit_cube());
}

TEST_CASE("layered corners live on the shift lattice") {
    auto spec = PartitionSpec::layered(3);  // default shifts have denominator 3
    SplitMix rng(31);
    for (int i = 0; i < 200; ++i) {
        Point corner = corner_of(spec, member_of(spec, random_point(rng, 3)));
        for (const auto& c : corner.coords) {
            Rational scaled = c * Rational(3);
            CHECK(scaled.is_integer());
        }
    }
}

TEST_CASE("build_profile block structure and claims") {
    auto [s1, c1] = build_profile([](int) { return 1L; }, 3);
    CHECK(s1.dim() == 3);
    CHECK(c1.k == Integer(8));
    CHECK(c1.epsilon == Rational(1, 2));

    auto [s2, c2] = build_profile([](int d) { return static_cast<long>(d); }, 4);
    CHECK(s2.dim() == 4);
    CHECK(c2.k == Integer(5));
    CHECK(c2.epsilon == Rational(1, 8));
    CHECK(std::holds_alternative<LayeredSpec>(s2.variant()));

    auto [s3, c3] = build_profile([](int) { return 2L; }, 6);
    CHECK(s3.dim() == 6);
    CHECK(c3.k == Integer(27));
    CHECK(c3.epsilon == Rational(1, 4));

    // padding: f = 2, d = 5 -> blocks of dimension 2, 2, 1
    auto [s4, c4] = build_profile([](int) { return 2L; }, 5);
    CHECK(s4.dim() == 5);
    CHECK(c4.k == Integer(27));
    const auto& prod = std::get<ProductSpec>(s4.variant());
    std::vector<int> dims;
    for (const auto& f : prod.factors) dims.push_back(f.dim());
    CHECK(dims == std::vector<int>{2, 2, 1});

    CHECK_THROWS_AS(build_profile([](int) { return 0L; }, 3), std::invalid_argument);
}

TEST_CASE("default layered shifts are the descending schedule") {
    auto sh = layered_default_shifts(4);
    REQUIRE(sh.size() == 3);
    CHECK(sh[0] == Rational(3, 4));
    CHECK(sh[1] == Rational(1, 2));
    CHECK(sh[2] == Rational(1, 4));
}

TEST_CASE("spec JSON round-trips losslessly") {
    std::vector<PartitionSpec> specs = {
        PartitionSpec::grid(6),
        PartitionSpec::layered(4),
        PartitionSpec::layered(2, {Rational(2, 7)}),
        PartitionSpec::scaled(
            PartitionSpec::product({PartitionSpec::layered(2), PartitionSpec::grid(1)}),
            Rational(5, 3)),
    };
    SplitMix rng(37);
    for (const auto& spec : specs) {
        PartitionSpec back = spec_from_json(Json::parse(to_json(spec).dump()));
        CHECK(to_json(back) == to_json(spec));
        for (int i = 0; i < 50; ++i) {
            Point x = random_point(rng, spec.dim(), 10);
            CHECK(member_of(back, x) == member_of(spec, x));
        }
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(PartitionSpec::grid(0), std::invalid_argument);
    CHECK_THROWS_AS(PartitionSpec::layered(3, {Rational(1, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(PartitionSpec::product({}), std::invalid_argument);
    CHECK_THROWS_AS(PartitionSpec::scaled(PartitionSpec::grid(1), Rational(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(member_of(PartitionSpec::grid(2), Point{{Rational(0)}}), DimensionMismatch);
}
