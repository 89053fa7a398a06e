#include "diolab/inhomog.hpp"
#include "diolab/onesided.hpp"
#include "diolab/partition.hpp"
#include "doctest.h"

#include <random>

using namespace diolab;

namespace {

Alpha make(const std::string& name) {
    return Alpha(RealNumberSpec::fixture(name, Config{}));
}

struct BruteMin {
    Rat lo, hi;
    Int arg;
};

// Direct per-q enclosure minimum, the slow reference path.
BruteMin brute_min(Alpha& al, const Rat& x, long q_hi, bool two_sided,
                   long depth) {
    BruteMin b;
    bool first = true;
    for (long q = 1; q <= q_hi; ++q) {
        for (int side = 0; side < (two_sided ? 2 : 1); ++side) {
            Rat xx = side == 0 ? x : Rat(-x);
            RatInterval v = RatInterval(Rat(q)) * al.inhom_dist(q, xx, depth);
            if (first || v.hi < b.hi) {
                b.hi = v.hi;
                b.arg = side == 0 ? q : -q;
            }
            if (first || v.lo < b.lo)
                b.lo = v.lo;
            first = false;
        }
    }
    return b;
}

} // namespace

TEST_CASE("scan minimum matches direct brute force") {
    for (const char* name : {"golden", "sqrt2m1"}) {
        Alpha al = make(name);
        Rat x(1, 2);
        ScanReport rep = liminf_scan(al, x, 1, 2000, ScanMode::positive);
        BruteMin b = brute_min(al, x, 2000, false, 40);
        // both enclose the same true minimum
        CHECK(rep.min_lo <= b.hi);
        CHECK(b.lo <= rep.min_hi);
        CHECK(rep.min_hi - rep.min_lo < Rat(1, 1000000));
        CHECK(rep.argmin == b.arg);
    }
}

TEST_CASE("two-sided scan covers the mirrored values") {
    Alpha al = make("sqrt2m1");
    Rat x(1, 3);
    ScanReport rep = liminf_scan(al, x, 1, 1500, ScanMode::two_sided);
    BruteMin b = brute_min(al, x, 1500, true, 40);
    CHECK(rep.min_lo <= b.hi);
    CHECK(b.lo <= rep.min_hi);
    CHECK(rep.argmin == b.arg);
    // the reported argmin reproduces the reported minimum
    Int qa = abs(rep.argmin);
    Rat xx = rep.argmin < 0 ? Rat(-x) : x;
    RatInterval v = RatInterval(Rat(qa)) * al.inhom_dist(qa, xx, 40);
    CHECK(v.lo <= rep.min_hi);
    CHECK(rep.min_lo <= v.hi);
}

TEST_CASE("thread count does not change the report") {
    Config cfg;
    cfg.threads = 3;
    Alpha al1 = make("golden");
    Alpha al3(RealNumberSpec::fixture("golden", cfg), cfg);
    Rat x(2, 7);
    ScanReport r1 = liminf_scan(al1, x, 1, 5000, ScanMode::two_sided);
    ScanReport r3 = liminf_scan(al3, x, 1, 5000, ScanMode::two_sided);
    CHECK(r1.min_lo == r3.min_lo);
    CHECK(r1.min_hi == r3.min_hi);
    CHECK(r1.argmin == r3.argmin);
}

TEST_CASE("threshold certification paths") {
    Alpha al = make("golden");
    Rat x(1, 2);
    ScanReport rep =
        liminf_scan(al, x, 1, 100000, ScanMode::two_sided, Rat(1, 4));
    CHECK(rep.has_threshold);
    CHECK(rep.below_threshold);
    // a threshold strictly under the certified minimum flips the verdict
    Rat small = rep.min_lo / 2;
    ScanReport rep2 = liminf_scan(al, x, 1, 1000, ScanMode::positive, small);
    CHECK_FALSE(rep2.below_threshold);
}

TEST_CASE("exact scan for a rational number") {
    Alpha al(RealNumberSpec::from_json_text(
        R"({"kind":"rational","terms":[0,2,3]})", Config{}));
    Rat x(1, 5);
    ScanReport rep = liminf_scan(al, x, 1, 20, ScanMode::positive);
    CHECK(rep.min_lo == rep.min_hi);
    Rat best;
    Int arg = 0;
    for (long q = 1; q <= 20; ++q) {
        Rat v = Rat(q) * dist_to_int(make_rat(3 * q, 7) - x);
        if (arg == 0 || v < best) {
            best = v;
            arg = q;
        }
    }
    CHECK(rep.min_hi == best);
    CHECK(rep.argmin == arg);

    // x on the orbit pins the minimum at zero
    ScanReport zero = liminf_scan(al, Rat(6, 7), 1, 10, ScanMode::positive);
    CHECK(zero.min_hi == 0);
    CHECK(zero.argmin == 2);
}

TEST_CASE("witness scan finds and certifies a value below threshold") {
    Alpha al = make("golden");
    Rat x(1, 2);
    auto w = scan_witness(al, x, 1, 100000, ScanMode::positive, Rat(1, 4));
    REQUIRE(w.has_value());
    Int q = *w;
    REQUIRE(q > 0);
    bool ok = al.resolve(
        [&](long d) {
            RatInterval v = RatInterval(Rat(q)) * al.inhom_dist(q, x, d);
            return certified_lt(v, RatInterval(Rat(1, 4)));
        },
        al.depth_for(q) + 4);
    CHECK(ok);

    // no value in a tiny window sits below an impossible threshold
    auto none = scan_witness(al, x, 1, 50, ScanMode::positive, Rat(1, 1000000));
    CHECK_FALSE(none.has_value());
}

TEST_CASE("scan preconditions") {
    Alpha al = make("golden");
    CHECK_THROWS_AS(liminf_scan(al, Rat(1, 2), 0, 10, ScanMode::positive),
                    precondition_error);
    CHECK_THROWS_AS(liminf_scan(al, Rat(1, 2), 5, 4, ScanMode::positive),
                    precondition_error);
}

TEST_CASE("membership probe worked examples") {
    Alpha al = make("golden");

    // target glued to the orbit point of 5: the probe must catch q = 5
    RatInterval op = al.orbit_point(Int(5));
    Rat x5 = (op.lo + op.hi) / 2;
    BadMembership hit = bad_membership(al, x5, make_rat(1, 100), 1, Int(10));
    CHECK(hit.certified_out);
    REQUIRE(hit.witness.has_value());
    CHECK(*hit.witness == 5);
    CHECK(hit.scale == 10);

    // the classical 1/4 bound forces a violation below 0.26 at this scale
    Rat x(1, 2);
    Rat eps = make_rat(26, 100);
    BadMembership out = bad_membership(al, x, eps, 1, Int(10000));
    CHECK(out.certified_out);
    REQUIRE(out.witness.has_value());
    Int w = *out.witness;
    auto sw = scan_witness(al, x, 1, 10000, ScanMode::positive, eps);
    REQUIRE(sw.has_value());
    CHECK(w == *sw);
    bool confirmed = al.resolve(
        [&](long d) {
            RatInterval v = RatInterval(Rat(w)) * al.inhom_dist(w, x, d);
            return certified_lt(v, RatInterval(eps));
        },
        al.depth_for(w) + 4);
    CHECK(confirmed);

    CHECK_THROWS_AS(bad_membership(al, x, Rat(0), 1, Int(10)),
                    precondition_error);
    CHECK_THROWS_AS(bad_membership(al, x, eps, 1, Int(0)), precondition_error);
    CHECK_THROWS_AS(bad_membership(al, x, eps, -1, Int(10)),
                    precondition_error);
}

TEST_CASE("membership probe on a rational number") {
    Alpha al(RealNumberSpec::from_json_text(R"({"kind":"rational","terms":[0,2]})",
                                            Config{}));
    // alpha = 1/2, x = 1/4: every n || n alpha - x || equals n / 4
    BadMembership in = bad_membership(al, make_rat(1, 4), make_rat(1, 8), 1,
                                      Int(10));
    CHECK_FALSE(in.certified_out);
    CHECK_FALSE(in.witness.has_value());
    CHECK(in.scale == 10);

    // x = 1/2 is hit exactly at n = 1
    BadMembership out = bad_membership(al, make_rat(1, 2), make_rat(1, 8), 0,
                                       Int(10));
    CHECK(out.certified_out);
    REQUIRE(out.witness.has_value());
    CHECK(*out.witness == 1);
}

TEST_CASE("membership probe keeps a one-sided chain point") {
    Alpha al = make("growing");
    OnesidedParams p;
    p.eps = make_rat(1, 25);

    long K = 1;
    while (!level_hypothesis(al, K, p)) ++K;
    CHECK(K == 7);

    ChainReport rep = build_onesided_chain(al, K, 6, p);
    REQUIRE(rep.all_pass);
    long k_last = K + 6;
    Int n2 = rep.steps.back().n2;
    CHECK(rep.steps.back().k == k_last - 1);

    // midpoint of the deepest chosen arc, as an exact rational
    RatInterval op = al.orbit_point(n2);
    RatInterval len =
        interval_length(al, k_last, interval_type(al, k_last, n2));
    Rat mid_op = (op.lo + op.hi) / 2;
    Rat half_len = (len.lo + len.hi) / 4;
    Rat x = owner_on_right(k_last) ? Rat(mid_op - half_len)
                                   : Rat(mid_op + half_len);
    x = frac_part(x);
    CHECK(locate(al, k_last, x) == n2);

    // the chain certifies n ||n alpha - x|| >= eps through scale q_{K+6}
    BadMembership bm = bad_membership(al, x, p.eps, K, al.q(k_last));
    CHECK_FALSE(bm.certified_out);
    CHECK_FALSE(bm.witness.has_value());
    CHECK(bm.scale == al.q(k_last));

    // independent dense scan over the first block agrees
    ScanReport sc = liminf_scan(al, x, al.q(K), al.q(K + 1), ScanMode::positive,
                                p.eps);
    CHECK_FALSE(sc.below_threshold);
}

TEST_CASE("probe values obey the index triangle inequality") {
    Alpha al = make("sqrt2m1");
    Config cfg;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> idx(1, 500);
    std::uniform_int_distribution<long> den(7, 9973);
    for (int it = 0; it < 300; ++it) {
        Int y(idx(rng)), k(idx(rng));
        long dd = den(rng);
        Rat x = make_rat(idx(rng) % dd, dd);
        long d = std::max(al.depth_for(y), al.depth_for(k)) + 2;
        // ||y x|| <= |y| ||k alpha - x|| + |k| ||y alpha||
        Rat lhs = dist_to_int(Rat(y) * x);
        RatInterval rhs = RatInterval(Rat(y)) * al.inhom_dist(k, x, d) +
                          RatInterval(Rat(k)) * al.qdist(y, d);
        CHECK(lhs <= rhs.hi);
    }
}
