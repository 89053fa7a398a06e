#include "doctest.h"

#include "diolab/enclose.hpp"
#include "diolab/interval.hpp"

using namespace diolab;

TEST_CASE("rational parsing and helpers") {
    CHECK(parse_rat("3/7") == make_rat(3, 7));
    CHECK(parse_rat("-2") == Rat(-2));
    CHECK_THROWS_AS(parse_rat("1/0"), precondition_error);
    CHECK_THROWS_AS(parse_rat("x"), precondition_error);

    CHECK(rep_mod(Int(5), Int(5)) == 5);
    CHECK(rep_mod(Int(6), Int(5)) == 1);
    CHECK(rep_mod(Int(-1), Int(5)) == 4);
    CHECK(rep_mod(Int(0), Int(5)) == 5);

    CHECK(frac_part(make_rat(-3, 2)) == make_rat(1, 2));
    CHECK(dist_to_int(make_rat(7, 10)) == make_rat(3, 10));
    CHECK(dist_to_int(make_rat(-7, 10)) == make_rat(3, 10));
    CHECK(pow_rat(make_rat(2, 3), -2) == make_rat(9, 4));
    CHECK(bit_length(Int(8)) == 4);
    CHECK(bit_length(Int(0)) == 0);
}

TEST_CASE("interval arithmetic is outward exact") {
    RatInterval a(make_rat(1, 3), make_rat(1, 2));
    RatInterval b(make_rat(-2, 1), make_rat(3, 1));

    RatInterval s = a + b;
    CHECK(s.lo == make_rat(-5, 3));
    CHECK(s.hi == make_rat(7, 2));

    RatInterval m = a * b;
    CHECK(m.lo == Rat(-1));
    CHECK(m.hi == make_rat(3, 2));

    RatInterval n = -a;
    CHECK(n.lo == make_rat(-1, 2));

    CHECK(abs_interval(RatInterval(Rat(-3), Rat(2))).hi == 3);
    CHECK(abs_interval(RatInterval(Rat(-3), Rat(2))).lo == 0);

    CHECK_THROWS_AS(a / b, precondition_error);
    RatInterval c(Rat(2), Rat(4));
    RatInterval d = a / c;
    CHECK(d.lo == make_rat(1, 12));
    CHECK(d.hi == make_rat(1, 4));

    CHECK_THROWS_AS(RatInterval(Rat(1), Rat(0)), invariant_error);
}

TEST_CASE("certified comparisons separate only when enclosures do") {
    RatInterval a(Rat(1), Rat(2));
    RatInterval b(Rat(3), Rat(4));
    CHECK(certified_lt(a, b) == true);
    CHECK(certified_lt(b, a) == false);
    CHECK(!certified_lt(a, RatInterval(Rat(2), Rat(3))).has_value());
    CHECK(certified_le(a, RatInterval(Rat(2), Rat(3))) == true);
    // Touching points: a < a is definitely false.
    RatInterval pt(make_rat(1, 2));
    CHECK(certified_lt(pt, pt) == false);
    CHECK(certified_le(pt, pt) == true);
}

TEST_CASE("sqrt enclosures") {
    RatInterval r = sqrt_enclosure(Rat(2), 64);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 2);
    CHECK(r.width() < make_rat(1, Int(1) << 60));
    // 1.41421356 < sqrt(2) < 1.41421357
    CHECK(r.lo > make_rat(141421356, 100000000));
    CHECK(r.hi < make_rat(141421357, 100000000));

    CHECK(sqrt_enclosure(make_rat(49, 4), 16).is_point());
    CHECK(sqrt_enclosure(make_rat(49, 4), 16).lo == make_rat(7, 2));
    CHECK(sqrt_enclosure(Rat(0), 8).is_point());
    CHECK_THROWS_AS(sqrt_enclosure(Rat(-1), 8), precondition_error);
}

TEST_CASE("nth root enclosures") {
    CHECK(nth_root_enclosure(Rat(27), 3, 16).is_point());
    CHECK(nth_root_enclosure(Rat(27), 3, 16).lo == 3);
    RatInterval r = nth_root_enclosure(Rat(2), 3, 48);
    CHECK(pow_rat(r.lo, 3) <= 2);
    CHECK(pow_rat(r.hi, 3) >= 2);
    // 1.25992104 < 2^(1/3) < 1.25992105
    CHECK(r.lo > make_rat(125992104, 100000000));
    CHECK(r.hi < make_rat(125992105, 100000000));
}

TEST_CASE("log enclosures against known digits") {
    RatInterval l2 = ln2_enclosure(64);
    // 0.6931471805 < ln 2 < 0.6931471806
    CHECK(l2.lo > make_rat(Int("6931471805"), Int("10000000000")));
    CHECK(l2.hi < make_rat(Int("6931471806"), Int("10000000000")));

    CHECK(ln_enclosure(Rat(1), 32).is_point());

    RatInterval l8 = ln_enclosure(Rat(8), 64);
    RatInterval three_l2 = l2 * Rat(3);
    CHECK(l8.lo <= three_l2.hi);
    CHECK(three_l2.lo <= l8.hi);

    // 1.0986122886 < ln 3 < 1.0986122887
    RatInterval l3 = ln_enclosure(Rat(3), 64);
    CHECK(l3.lo > make_rat(Int("10986122886"), Int("10000000000")));
    CHECK(l3.hi < make_rat(Int("10986122887"), Int("10000000000")));

    // ln(1/3) = -ln 3.
    RatInterval li = ln_enclosure(make_rat(1, 3), 64);
    CHECK(li.hi < 0);
    CHECK((li + l3).contains(Rat(0)));

    CHECK_THROWS_AS(ln_enclosure(Rat(0), 8), precondition_error);
}

TEST_CASE("rational powers through roots") {
    CHECK(pow_enclosure(Rat(4), make_rat(1, 2), 16).lo == 2);
    RatInterval r = pow_enclosure(Rat(2), make_rat(19, 39), 64);
    CHECK(pow_rat(r.lo, 39) <= pow_rat(Rat(2), 19));
    CHECK(pow_rat(r.hi, 39) >= pow_rat(Rat(2), 19));
    RatInterval inv = pow_enclosure(Rat(2), make_rat(-1, 2), 64);
    RatInterval direct = sqrt_enclosure(make_rat(1, 2), 64);
    CHECK(inv.lo <= direct.hi);
    CHECK(direct.lo <= inv.hi);
}
