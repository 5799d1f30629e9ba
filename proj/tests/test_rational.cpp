#include "normnum/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace normnum;

TEST_CASE("rat canonicalizes") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, -4) == rat(1, 2));
    CHECK(rat(2, -4) == rat(-1, 2));
    CHECK(rat(0, 7) == Rat(0));
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("pow2 both signs") {
    CHECK(pow2(0) == 1);
    CHECK(pow2(5) == 32);
    CHECK(pow2(-3) == rat(1, 8));
}

TEST_CASE("floor and ceil of rationals") {
    CHECK(floor_rat(rat(7, 2)) == 3);
    CHECK(ceil_rat(rat(7, 2)) == 4);
    CHECK(floor_rat(rat(-7, 2)) == -4);
    CHECK(ceil_rat(rat(-7, 2)) == -3);
    CHECK(floor_rat(Rat(5)) == 5);
    CHECK(ceil_rat(Rat(5)) == 5);
}

TEST_CASE("integer roots") {
    CHECK(root_floor(Int(27), 3) == 3);
    CHECK(root_ceil(Int(27), 3) == 3);
    CHECK(root_floor(Int(28), 3) == 3);
    CHECK(root_ceil(Int(28), 3) == 4);
    CHECK(root_floor(Int(0), 2) == 0);
}

TEST_CASE("certified rational roots bracket the true value") {
    for (unsigned long d : {2ul, 3ul, 5ul}) {
        for (long num : {1L, 7L, 100L}) {
            Rat x = rat(num, 13);
            Rat up = rat_root_upper(x, d);
            Rat lo = rat_root_lower(x, d);
            CHECK(rat_pow(up, d) >= x);
            CHECK(rat_pow(lo, d) <= x);
            CHECK(lo <= up);
            CHECK(up - lo <= pow2(-40));
        }
    }
    // exact when the root is exact and d = 1
    CHECK(rat_root_upper(rat(9, 16), 1) == rat(9, 16));
}

TEST_CASE("rational powers certified") {
    Rat v = rat_pow_upper(Rat(4), rat(3, 2));
    CHECK(v >= 8);
    CHECK(v <= Rat(8) + pow2(-30));
    CHECK(rat_pow_lower(Rat(4), rat(3, 2)) <= 8);
}

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(Int(1)) == 0);
    CHECK(ceil_log2(Int(2)) == 1);
    CHECK(ceil_log2(Int(3)) == 2);
    CHECK(ceil_log2(Int(1024)) == 10);
    CHECK(ceil_log2(Int(1025)) == 11);
}

TEST_CASE("parse_rat accepts integers and fractions") {
    CHECK(parse_rat("3") == 3);
    CHECK(parse_rat("-3/6") == rat(-1, 2));
    CHECK(parse_rat("+4/8") == rat(1, 2));
}

TEST_CASE("parse_rat reports the offending position") {
    using Catch::Matchers::ContainsSubstring;
    CHECK_THROWS_WITH(parse_rat("1/2x"), ContainsSubstring("offset 3"));
    CHECK_THROWS_WITH(parse_rat("a/2"), ContainsSubstring("offset 0"));
    CHECK_THROWS_WITH(parse_rat("1//2"), ContainsSubstring("offset 2"));
    CHECK_THROWS_WITH(parse_rat("1/0"), ContainsSubstring("zero denominator"));
}
