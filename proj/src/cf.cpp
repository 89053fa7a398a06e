#include "diolab/cf.hpp"

namespace diolab {

Alpha::Alpha(RealNumberSpec spec, Config cfg) : spec_(std::move(spec)), cfg_(cfg) {
    ensure(1);
}

void Alpha::ensure(long k) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (k < static_cast<long>(a_.size())) return;
    if (k > max_usable_depth() + 1)
        throw budget_error("convergent table request past the depth cap");
    while (static_cast<long>(a_.size()) <= k) {
        long i = static_cast<long>(a_.size());
        Int ai = spec_.a(i);
        a_.push_back(ai);
        if (i == 0) {
            p_.push_back(ai); // p_0 = a_0, against p_-1 = 1
            q_.push_back(1);  // q_0 = 1, against q_-1 = 0
        } else {
            Int pp = i >= 2 ? p_[i - 2] : Int(1);
            Int qq = i >= 2 ? q_[i - 2] : Int(0);
            p_.push_back(ai * p_[i - 1] + pp);
            q_.push_back(ai * q_[i - 1] + qq);
        }
    }
}

Int Alpha::a(long k) const {
    if (k < 0) throw precondition_error("partial quotient index below zero");
    ensure(k);
    std::lock_guard<std::mutex> lock(mu_);
    return a_[k];
}

Int Alpha::p(long k) const {
    if (k < -1) throw precondition_error("convergent index below -1");
    if (k == -1) return 1;
    ensure(k);
    std::lock_guard<std::mutex> lock(mu_);
    return p_[k];
}

Int Alpha::q(long k) const {
    if (k < -1) throw precondition_error("convergent index below -1");
    if (k == -1) return 0;
    ensure(k);
    std::lock_guard<std::mutex> lock(mu_);
    return q_[k];
}

Rat Alpha::convergent(long k) const { return make_rat(p(k), q(k)); }

long Alpha::last_level() const {
    if (spec_.finite()) return spec_.cf_length() - 1;
    return cfg_.max_depth;
}

long Alpha::max_usable_depth() const {
    if (spec_.finite()) return spec_.cf_length() - 1;
    return cfg_.max_depth;
}

RatInterval Alpha::enclosure(long depth) const {
    if (depth < 1) depth = 1;
    long last = last_level();
    if (spec_.finite() && depth >= last) {
        Rat exact = convergent(last);
        return RatInterval(exact);
    }
    // Consecutive convergents straddle alpha; order alternates with parity.
    Rat c1 = convergent(depth), c2 = convergent(depth + 1);
    return c1 <= c2 ? RatInterval(c1, c2) : RatInterval(c2, c1);
}

RatInterval Alpha::D(long k, long depth) const {
    if (k < -1) throw precondition_error("D index below -1");
    if (k == -1) return RatInterval(Rat(1));
    if (depth <= k) depth = k + 1;
    RatInterval al = enclosure(depth);
    RatInterval v = al * Rat(q(k)) - Rat(p(k));
    return abs_interval(v);
}

RatInterval Alpha::D(long k) const {
    // Four levels past k keep the enclosure strictly inside the classical
    // open bounds 1/(q_k + q_{k+1}) < D_k < 1/q_{k+1}.
    return D(k, std::min(k + 4, max_usable_depth()));
}

long Alpha::depth_for(const Int& n) const {
    Int target = n * n;
    target <<= 16;
    if (target < 0) target = -target;
    long cap = max_usable_depth();
    for (long d = 1; d < cap; ++d) {
        if (q(d) * q(d + 1) > target) return d;
    }
    return cap;
}

std::optional<RatInterval> Alpha::orbit_point_at(const Int& n, long depth) const {
    RatInterval t = enclosure(depth) * Rat(n);
    Int fl = floor_rat(t.lo);
    if (floor_rat(t.hi) != fl) return std::nullopt;
    return t - Rat(fl);
}

RatInterval Alpha::orbit_point(const Int& n) const {
    if (n == 0) return RatInterval(Rat(0));
    long d = depth_for(n);
    long cap = max_usable_depth();
    for (int round = 0;; ++round) {
        if (auto v = orbit_point_at(n, d)) return *v;
        if (d >= cap || round >= cfg_.escalation_rounds)
            throw precision_error("orbit point wraps an integer at the deepest usable level");
        d = std::min(cap, d * 2);
    }
}

RatInterval fold_to_nearest(const RatInterval& t) {
    if (t.width() >= 1) return {Rat(0), make_rat(1, 2)};
    Rat gl = dist_to_int(t.lo), gh = dist_to_int(t.hi);
    Rat lo = gl <= gh ? gl : gh;
    Rat hi = gl <= gh ? gh : gl;
    if (floor_rat(t.hi) >= ceil_rat(t.lo)) lo = 0; // an integer lies inside
    // A half-integer inside lifts the top to 1/2. Width < 1 keeps this loop short.
    Int c = ceil_rat(2 * t.lo), f = floor_rat(2 * t.hi);
    for (Int j = c; j <= f; ++j) {
        if (mod_floor(j, Int(2)) == 1) {
            hi = make_rat(1, 2);
            break;
        }
    }
    return {lo, hi};
}

RatInterval Alpha::qdist(const Int& n, long depth) const {
    return fold_to_nearest(enclosure(depth) * Rat(n));
}

RatInterval Alpha::qdist(const Int& n) const { return qdist(n, depth_for(n)); }

RatInterval Alpha::inhom_dist(const Int& n, const Rat& x, long depth) const {
    return fold_to_nearest(enclosure(depth) * Rat(n) - x);
}

} // namespace diolab
