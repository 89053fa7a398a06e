#include "diolab/partition.hpp"

#include "diolab/errors.hpp"

namespace diolab {

int interval_type(Alpha& al, long k, const Int& n) {
    if (k < 0 || n < 1 || n > al.q(k))
        throw precondition_error("interval index out of range");
    return n > al.q(k) - al.q(k - 1) ? 2 : 1;
}

Int partner_index(Alpha& al, long k, const Int& n) {
    if (k < 0 || n < 1 || n > al.q(k))
        throw precondition_error("interval index out of range");
    return rep_mod(n + al.q(k - 1), al.q(k));
}

RatInterval interval_length(Alpha& al, long k, int type, long depth) {
    if (type == 1)
        return al.D(k - 1, depth);
    return al.D(k - 1, depth) + al.D(k, depth);
}

RatInterval interval_length(Alpha& al, long k, int type) {
    return interval_length(al, k, type, k + 4);
}

std::vector<PartitionInterval> partition_level(Alpha& al, long k) {
    Int qk = al.q(k);
    if (qk > al.config().materialize_cap)
        throw budget_error("partition level exceeds materialize cap");
    std::vector<PartitionInterval> out;
    out.reserve(qk.get_ui());
    Int thresh = qk - al.q(k - 1);
    for (Int n = 1; n <= qk; ++n)
        out.push_back({n, partner_index(al, k, n), n > thresh ? 2 : 1});
    return out;
}

ChildRange children(Alpha& al, long k, const Int& n) {
    int t = interval_type(al, k, n);
    return {t == 2 ? -1L : 0L, al.a(k + 1) - 1};
}

Int parent_index(Alpha& al, long k, const Int& m) {
    if (k < 0 || m < 1 || m > al.q(k + 1))
        throw precondition_error("child index out of range");
    return rep_mod(m - al.q(k - 1), al.q(k));
}

bool owner_on_right(long k) {
    return k % 2 == 0;
}

RatInterval owner_offset(Alpha& al, long k, const Int& n, const Rat& x) {
    long d0 = al.depth_for(al.q(k + 1));
    return al.resolve_value(
        [&](long d) -> std::optional<RatInterval> {
            RatInterval pos = al.enclosure(d) * RatInterval(Rat(n));
            RatInterval raw = owner_on_right(k) ? pos - RatInterval(x)
                                                : RatInterval(x) - pos;
            Int base = floor_rat(raw.lo);
            if (floor_rat(raw.hi) != base)
                return std::nullopt;
            return raw - RatInterval(Rat(base));
        },
        d0);
}

namespace {

// Certifies lower < t < upper for the arc-offset band of one child, at a
// common evaluation depth. nullopt until the enclosures separate.
std::optional<bool> child_band_test(Alpha& al, long k, const Int& n,
                                    const Rat& x, const Int& c, long d) {
    RatInterval pos = al.enclosure(d) * RatInterval(Rat(n));
    RatInterval raw = owner_on_right(k) ? pos - RatInterval(x)
                                        : RatInterval(x) - pos;
    Int base = floor_rat(raw.lo);
    if (floor_rat(raw.hi) != base)
        return std::nullopt;
    RatInterval t = raw - RatInterval(Rat(base));
    RatInterval Dk = al.D(k, d);
    RatInterval Dprev = al.D(k - 1, d);
    RatInterval upper = Dprev - RatInterval(Rat(c)) * Dk;
    RatInterval lower = c == al.a(k + 1) - 1
                            ? RatInterval(Rat(0))
                            : Dprev - RatInterval(Rat(c + 1)) * Dk;
    auto lt_upper = certified_lt(t, upper);
    auto gt_lower = certified_lt(lower, t);
    if (!lt_upper || !gt_lower)
        return std::nullopt;
    return *lt_upper && *gt_lower;
}

} // namespace

Int locate_step(Alpha& al, long k, const Int& n, const Rat& x) {
    ChildRange cr = children(al, k, n);
    RatInterval t = owner_offset(al, k, n, x);
    Rat tm = t.mid();
    RatInterval Dk = al.D(k);
    RatInterval Dprev = al.D(k - 1);
    Rat ratio = (Dprev.mid() - tm) / Dk.mid();
    Int cand = floor_rat(ratio);
    if (cand > cr.c_hi)
        cand = cr.c_hi;
    if (cand < cr.c_lo)
        cand = cr.c_lo;
    // The band boundaries are orbit points, so x sits strictly inside exactly
    // one band; at most the two neighbors of the midpoint guess can compete.
    Int order[3] = {cand, cand - 1, cand + 1};
    for (const Int& c : order) {
        if (c < cr.c_lo || c > cr.c_hi)
            continue;
        bool verdict = al.resolve(
            [&](long d) { return child_band_test(al, k, n, x, c, d); },
            al.depth_for(al.q(k + 1)));
        if (verdict)
            return n + al.q(k - 1) + c * al.q(k);
    }
    throw precondition_error("locate: point coincides with an orbit point");
}

Int locate(Alpha& al, long k, const Rat& x) {
    if (k < 0)
        throw precondition_error("locate: negative level");
    Int n = 1;
    try {
        for (long j = 0; j < k; ++j)
            n = locate_step(al, j, n, x);
    } catch (const precision_error&) {
        throw precondition_error("locate: point coincides with an orbit point");
    }
    return n;
}

namespace {

// Number of c in [c_lo, c_hi] with lo < first + c * step <= hi.
Int ap_count(const Int& first, const Int& step, const Int& c_lo,
             const Int& c_hi, const Int& lo, const Int& hi) {
    if (c_hi < c_lo || hi <= lo)
        return 0;
    Int c_min = c_lo;
    Int c_max = c_hi;
    // first + c*step > lo  <=>  c > (lo - first)/step
    Int lo_bound = floor_div(lo - first, step) + 1;
    if (lo_bound > c_min)
        c_min = lo_bound;
    // first + c*step <= hi  <=>  c <= (hi - first)/step
    Int hi_bound = floor_div(hi - first, step);
    if (hi_bound < c_max)
        c_max = hi_bound;
    return c_max >= c_min ? Int(c_max - c_min + 1) : Int(0);
}

} // namespace

Int count_orbit_hits(Alpha& al, long k, const Int& n, const Int& Q) {
    (void)interval_type(al, k, n); // validates the (k, n) pair
    if (Q <= al.q(k))
        return 0;
    std::vector<Int> frontier{n};
    Int total = 0;
    for (long lvl = k;; ++lvl) {
        Int qn = al.q(lvl);
        Int qn1 = al.q(lvl + 1);
        Int hi = Q < qn1 ? Q : qn1;
        Int step = al.q(lvl);
        Int qprev = al.q(lvl - 1);
        for (const Int& idx : frontier) {
            ChildRange cr = children(al, lvl, idx);
            total += ap_count(idx + qprev, step, cr.c_lo, cr.c_hi, qn, hi);
        }
        if (qn1 >= Q)
            return total;
        std::vector<Int> next;
        for (const Int& idx : frontier) {
            ChildRange cr = children(al, lvl, idx);
            for (Int c = cr.c_lo; c <= cr.c_hi; ++c)
                next.push_back(idx + qprev + c * step);
        }
        if (Int(next.size()) > al.config().materialize_cap)
            throw budget_error("orbit hit frontier exceeds materialize cap");
        frontier = std::move(next);
    }
}

} // namespace diolab
