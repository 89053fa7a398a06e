#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "diolab/inhomog.hpp"
#include "diolab/onesided.hpp"
#include "diolab/partition.hpp"

using namespace diolab;

namespace {

Alpha make(const std::string& name) {
    return Alpha(RealNumberSpec::fixture(name, Config{}), Config{});
}

// Independent certification that w * ||w alpha - x|| < bar.
bool certify_witness(Alpha& al, const Int& w, const Rat& x, const Rat& bar) {
    return al.resolve(
        [&](long d) {
            RatInterval v = RatInterval(Rat(w)) * al.inhom_dist(w, x, d);
            if (v.hi < bar)
                return std::optional<bool>(true);
            if (v.lo > bar)
                return std::optional<bool>(false);
            return std::optional<bool>();
        },
        al.depth_for(w));
}

} // namespace

TEST_CASE("gamma rules and deltas") {
    Alpha golden = make("golden");
    Alpha growing = make("growing");
    OnesidedParams p{Rat(1, 25)};

    CHECK(gamma_value(golden, 5, p) == Rat(1, 2));   // a=1, ceil log2 3 = 2
    CHECK(gamma_value(growing, 8, p) == Rat(1, 4));  // a=8, ceil log2 10 = 4
    CHECK(gamma_value(growing, 14, p) == Rat(1, 4)); // a=14, log2 16 = 4 exact
    CHECK(gamma_value(growing, 31, p) == Rat(1, 6)); // a=31, ceil log2 33 = 6

    OnesidedParams pc{Rat(1, 25), GammaRule::constant, Rat(1, 5)};
    CHECK(gamma_value(golden, 9, pc) == Rat(1, 5));
    OnesidedParams bad{Rat(1, 25), GammaRule::constant, Rat(1)};
    CHECK_THROWS_AS(gamma_value(golden, 1, bad), precondition_error);

    CHECK(delta_ratio(growing, 8) == make_rat(Int(9976), Int(81201)));
    CHECK(delta_ratio(golden, 1) == Rat(1));
    CHECK(delta_ratio(golden, 2) == Rat(1, 2));
}

TEST_CASE("sqrt of eps collapses on rational squares") {
    RatInterval s = sqrt_eps(Rat(1, 25));
    CHECK(s.lo == Rat(1, 5));
    CHECK(s.hi == Rat(1, 5));
    RatInterval t = sqrt_eps(make_rat(Int(4), Int(100)));
    CHECK(t.lo == Rat(1, 5));
    RatInterval u = sqrt_eps(Rat(1, 10));
    CHECK(u.lo < u.hi);
    CHECK(u.lo * u.lo < Rat(1, 10));
    CHECK(u.hi * u.hi > Rat(1, 10));
    CHECK_THROWS_AS(sqrt_eps(Rat(0)), precondition_error);
}

TEST_CASE("level hypothesis certified per fixture") {
    Alpha golden = make("golden");
    Alpha growing = make("growing");
    OnesidedParams p{Rat(1, 25)};
    for (long k = 8; k <= 14; ++k)
        CHECK(level_hypothesis(growing, k, p));
    // gamma=1/2 and delta near 0.618 push the left side far above 3/5
    for (long k : {2L, 5L, 10L})
        CHECK_FALSE(level_hypothesis(golden, k, p));
    OnesidedParams pc{Rat(1, 25), GammaRule::constant, Rat(1, 5)};
    CHECK(level_hypothesis(growing, 8, pc));
}

TEST_CASE("admissible window growing level 8") {
    Alpha al = make("growing");
    OnesidedParams p{Rat(1, 25)};
    AdmissibleWindow w = admissible_window(al, 8, p);
    CHECK(w.lo == make_rat(Int(131081), Int(5)));
    CHECK(w.hi == make_rat(Int(930329), Int(20)));
    CHECK(w.contains(Int(26217)));
    CHECK_FALSE(w.contains(Int(26216)));
    CHECK(w.contains(Int(46516)));
    CHECK_FALSE(w.contains(Int(46517)));
}

TEST_CASE("chain growing eps 1/25 depth 6") {
    Alpha al = make("growing");
    OnesidedParams p{Rat(1, 25)};
    ChainReport rep = build_onesided_chain(al, 8, 6, p);

    CHECK(rep.all_pass);
    REQUIRE(rep.steps.size() == 6);
    REQUIRE(rep.hypothesis.size() == 7);
    for (bool h : rep.hypothesis)
        CHECK(h);

    const std::vector<long> n1 = {26217, 279796, 2583352, 25791290, 365761725};
    const std::vector<long> bs = {3, 3, 3, 4, 4, 4};
    for (size_t i = 0; i < rep.steps.size(); ++i) {
        const PairCheck& pc = rep.steps[i];
        CHECK(pc.k == 8 + static_cast<long>(i));
        CHECK(pc.b == Int(bs[i]));
        if (i < n1.size())
            CHECK(pc.n1 == Int(n1[i]));
        CHECK(pc.n2 == pc.n1 + al.q(pc.k - 1) + pc.b * al.q(pc.k));
        CHECK(pc.far_ok);
        CHECK(pc.near_ok);
        CHECK(pc.interior_ok);
        CHECK(pc.shrink_ok);
        CHECK(pc.far_gap.lo > pc.far_need);
        CHECK(pc.near_gap.lo > pc.near_need);
        if (i > 0) {
            CHECK(rep.steps[i - 1].n2 == pc.n1);
            CHECK(pc.eps_k < rep.steps[i - 1].eps_k);
        }
    }
    CHECK(rep.steps.front().eps_k ==
          parse_rat("746838097943/1604066207600"));
    CHECK(rep.steps.back().eps_k ==
          parse_rat("69480080605309935885389/194649231731771545688400"));
    CHECK(rep.steps.back().n2 == Int("58062556026"));
}

TEST_CASE("chain rejects fixtures that break the hypothesis") {
    Alpha golden = make("golden");
    OnesidedParams p{Rat(1, 25)};
    CHECK_THROWS_AS(build_onesided_chain(golden, 8, 3, p), precondition_error);
}

TEST_CASE("pair check preconditions") {
    Alpha al = make("growing");
    OnesidedParams p{Rat(1, 25)};
    Int n1(26217);
    // not of the form n1 + q7 + b q8
    CHECK_THROWS_AS(check_onesided_pair(al, 8, n1, n1 + al.q(7) + 100, p),
                    precondition_error);
    // b = 0
    CHECK_THROWS_AS(check_onesided_pair(al, 8, n1, n1 + al.q(7), p),
                    precondition_error);
    // b = a_9 leaves the parent arc
    CHECK_THROWS_AS(
        check_onesided_pair(al, 8, n1, n1 + al.q(7) + al.a(9) * al.q(8), p),
        precondition_error);

    OnesidedParams pc{Rat(1, 25), GammaRule::constant, Rat(1, 5)};
    PairCheck chk =
        check_onesided_pair(al, 8, n1, n1 + al.q(7) + 3 * al.q(8), pc);
    CHECK(chk.pass);
    CHECK(chk.eps_k < parse_rat("746838097943/1604066207600"));
}

TEST_CASE("descent start level") {
    Alpha growing = make("growing");
    CHECK(descent_start_level(growing, Rat(1, 100)) == 100);
    CHECK(descent_start_level(growing, Rat(1, 10)) == 10);
    Alpha golden = make("golden");
    CHECK_THROWS_AS(descent_start_level(golden, Rat(1, 100)),
                    precondition_error);
}

TEST_CASE("locate_step refines locate by one level") {
    Alpha al = make("golden");
    Rat x = make_rat(Int(1), Int(3));
    for (long k = 1; k <= 8; ++k) {
        Int n = locate(al, k, x);
        CHECK(locate_step(al, k, n, x) == locate(al, k + 1, x));
    }
}

TEST_CASE("emptiness descent refutes sampled targets") {
    Alpha al = make("growing");
    Rat eps(3, 10), delta(1, 100);
    Rat bar = eps - delta;
    Rat drop = eps - Rat(2) * delta - Rat(1, 4);
    Int qK = al.q(100);

    std::mt19937_64 rng(4457);
    std::vector<Rat> xs = {Rat(1, 2)};
    for (int i = 0; i < 6; ++i)
        xs.push_back(make_rat(Int(1 + static_cast<long>(rng() % 9999982)),
                              Int(9999983)));

    for (const Rat& x : xs) {
        DescentResult res = emptiness_descent(al, x, eps, delta);
        CHECK(res.refuted);
        CHECK(res.witness > qK);
        CHECK(res.steps <= 40);
        if (!res.via_scan) {
            REQUIRE(!res.log.empty());
            const DescentStep& last = res.log.back();
            CHECK(last.hit);
            CHECK(last.n == res.witness);
            // every certified miss above the start scale dropped the ratio
            for (size_t i = 0; i + 1 < res.log.size(); ++i) {
                const DescentStep& s = res.log[i];
                if (!s.hit && s.n > qK)
                    CHECK(s.ratio - res.log[i + 1].ratio > drop);
            }
        }
        CHECK(certify_witness(al, res.witness, x, bar));
    }
}

TEST_CASE("descent preconditions") {
    Alpha al = make("growing");
    CHECK_THROWS_AS(
        emptiness_descent(al, Rat(1, 2), make_rat(Int(26), Int(100)), Rat(1, 100)),
        precondition_error);
    CHECK_THROWS_AS(emptiness_descent(al, Rat(1, 2), Rat(3, 10), Rat(0)),
                    precondition_error);
    Alpha rational(
        RealNumberSpec::from_json_text(
            R"({"kind":"rational","terms":[0,2,3]})", Config{}),
        Config{});
    CHECK_THROWS_AS(emptiness_descent(rational, Rat(1, 5), Rat(3, 10), Rat(1, 100)),
                    precondition_error);
}
