#include "diolab/survivor.hpp"

#include <string>

#include "diolab/enclose.hpp"
#include "diolab/errors.hpp"

namespace diolab {

namespace {

long fit_ll(const Int& v, const char* what) {
    if (!v.fits_slong_p())
        throw budget_error(std::string(what) + " exceeds 64-bit range");
    return v.get_si();
}

} // namespace

SurvivorPlan survivor_plan(Alpha& al, long K, const Rat& eps, long depth) {
    if (K < 0 || depth < 0 || eps <= 0 || eps >= 1)
        throw precondition_error("survivor plan parameters out of range");
    SurvivorPlan pl;
    pl.eps = eps;
    pl.K = K;
    pl.depth = depth;
    pl.levels.push_back(K);
    pl.q.push_back(al.q(K));
    pl.rem_lo.push_back(0);
    pl.rem_hi.push_back(0); // generation 0 removes nothing
    for (long i = 0; i < depth; ++i) {
        Int prev_q = pl.q.back();
        Rat need = Rat(12) * Rat(prev_q) / eps; // next level needs q_k > need
        long k = pl.levels.back() + 1;
        while (!(Rat(al.q(k)) > need))
            ++k;
        pl.levels.push_back(k);
        pl.q.push_back(al.q(k));
        pl.rem_lo.push_back(prev_q);
        pl.rem_hi.push_back(ceil_rat(eps / 2 * Rat(al.q(k))));
    }
    return pl;
}

SurvivorAnalysis::SurvivorAnalysis(Alpha& al, SurvivorPlan plan)
    : al_(al), plan_(std::move(plan)) {
    long depth = plan_.depth;
    q_.resize(depth + 1);
    thresh_.resize(depth + 1);
    rem_lo_.resize(depth + 1, 0);
    rem_hi_.resize(depth + 1, 0);
    for (long i = 0; i <= depth; ++i) {
        q_[i] = fit_ll(plan_.q[i], "survivor level size");
        thresh_[i] = q_[i] - fit_ll(al_.q(plan_.levels[i] - 1), "survivor level size");
        if (i > 0) {
            rem_lo_[i] = fit_ll(plan_.rem_lo[i], "removal bound");
            rem_hi_[i] = fit_ll(plan_.rem_hi[i], "removal bound");
            if (rem_lo_[i] >= rem_hi_[i])
                throw invariant_error("empty removal window in survivor plan");
        }
    }
    branches_.resize(depth + 1);
    base_shift_.resize(depth + 1, 0);
    for (int i = 1; i <= depth; ++i)
        build_offsets(i);
    g_mat_ = 0;
    while (g_mat_ + 1 <= depth && q_[g_mat_ + 1] <= al_.config().bitset_cap)
        ++g_mat_;
    double fanout = 1;
    for (int g = g_mat_ + 1; g <= depth; ++g)
        fanout *= 2.0 * (double)branches_[g].size();
    if (fanout > 2e9)
        throw budget_error("windowed survivor recursion too deep; raise bitset cap");
    materialize();
}

void SurvivorAnalysis::build_offsets(int gen) {
    long kA = plan_.levels[gen - 1];
    long kB = plan_.levels[gen];
    std::vector<Branch> states;
    states.push_back({0, 1, 1});
    states.push_back({0, 2, 2});
    long shift = 0;
    for (long lvl = kA; lvl < kB; ++lvl) {
        long qprev = fit_ll(al_.q(lvl - 1), "offset step");
        long qcur = fit_ll(al_.q(lvl), "offset step");
        long amax = fit_ll(al_.a(lvl + 1), "partial quotient");
        shift += qprev;
        std::vector<Branch> next;
        next.reserve(states.size() * 2);
        for (const Branch& s : states) {
            long c_lo = s.t == 2 ? -1 : 0;
            for (long c = c_lo; c < amax; ++c) {
                int t2 = c == amax - 1 ? 2 : 1;
                next.push_back({s.off + c * qcur, t2, s.root_t});
            }
        }
        if ((long)next.size() > al_.config().materialize_cap)
            throw budget_error("survivor offset set exceeds materialize cap");
        states = std::move(next);
    }
    branches_[gen] = std::move(states);
    base_shift_[gen] = shift;
}

void SurvivorAnalysis::materialize() {
    alive_.resize(g_mat_ + 1);
    prefix_.resize(g_mat_ + 1);
    alive_[0].assign(q_[0] + 1, 1);
    alive_[0][0] = 0;
    for (int gen = 1; gen <= g_mat_; ++gen) {
        std::vector<uint8_t>& cur = alive_[gen];
        cur.assign(q_[gen] + 1, 0);
        const std::vector<uint8_t>& prev = alive_[gen - 1];
        long shift = base_shift_[gen];
        std::vector<long> off1, off2;
        for (const Branch& b : branches_[gen])
            (b.root_t == 1 ? off1 : off2).push_back(shift + b.off);
        for (long n = 1; n <= q_[gen - 1]; ++n) {
            if (!prev[n])
                continue;
            const std::vector<long>& offs =
                n > thresh_[gen - 1] ? off2 : off1;
            for (long o : offs)
                cur[n + o] = 1;
        }
        long a = rem_lo_[gen] < 1 ? 1 : rem_lo_[gen];
        long b = rem_hi_[gen] > q_[gen] + 1 ? q_[gen] + 1 : rem_hi_[gen];
        for (long m = a; m < b; ++m)
            cur[m] = 0;
    }
    for (int gen = 0; gen <= g_mat_; ++gen) {
        prefix_[gen].resize(q_[gen] + 1);
        prefix_[gen][0] = 0;
        for (long m = 1; m <= q_[gen]; ++m)
            prefix_[gen][m] = prefix_[gen][m - 1] + alive_[gen][m];
    }
}

long SurvivorAnalysis::cnt(int g, long lo, long hi, int tau) {
    if (lo < 1)
        lo = 1;
    if (hi > q_[g] + 1)
        hi = q_[g] + 1;
    if (tau == 1 && hi > thresh_[g] + 1)
        hi = thresh_[g] + 1;
    if (tau == 2 && lo < thresh_[g] + 1)
        lo = thresh_[g] + 1;
    if (hi <= lo)
        return 0;
    if (g <= g_mat_)
        return (long)prefix_[g][hi - 1] - (long)prefix_[g][lo - 1];
    long res = 0;
    long ra = rem_lo_[g];
    long rb = rem_hi_[g];
    for (const Branch& br : branches_[g]) {
        if (tau != 0 && br.t != tau)
            continue;
        long o = base_shift_[g] + br.off;
        long a = lo - o;
        long b = hi - o;
        long cut_a = ra - o;
        long cut_b = rb - o;
        // survivors avoid [cut_a, cut_b) in root coordinates; the window is
        // nonempty, so the two flanking pieces are disjoint
        long v1 = b < cut_a ? b : cut_a;
        long u2 = a > cut_b ? a : cut_b;
        if (v1 > a)
            res += cnt(g - 1, a, v1, br.root_t);
        if (b > u2)
            res += cnt(g - 1, u2, b, br.root_t);
    }
    return res;
}

Int SurvivorAnalysis::count(int gen) {
    if (gen < 0 || gen > plan_.depth)
        throw precondition_error("survivor generation out of range");
    return Int(cnt(gen, 1, q_[gen] + 1, 0));
}

Int SurvivorAnalysis::count_window(int gen, const Int& lo, const Int& hi, int tau) {
    if (gen < 0 || gen > plan_.depth)
        throw precondition_error("survivor generation out of range");
    Int l = lo < 1 ? Int(1) : lo;
    Int h = hi > q_[gen] + 1 ? Int(q_[gen] + 1) : hi;
    if (h <= l)
        return 0;
    return Int(cnt(gen, fit_ll(l, "window"), fit_ll(h, "window"), tau));
}

bool SurvivorAnalysis::is_alive(int gen, const Int& m) const {
    if (gen < 0 || gen > g_mat_)
        throw precondition_error("generation not materialized");
    if (m < 1 || m > q_[gen])
        return false;
    return alive_[gen][m.get_si()] != 0;
}

std::vector<Int> SurvivorAnalysis::survivors(int gen) const {
    if (gen < 0 || gen > g_mat_)
        throw precondition_error("generation not materialized");
    std::vector<Int> out;
    for (long m = 1; m <= q_[gen]; ++m)
        if (alive_[gen][m])
            out.push_back(Int(m));
    return out;
}

bool SurvivorAnalysis::counts_within_bound() {
    Rat shrink = 1 - plan_.eps / 32;
    for (long i = 0; i <= plan_.depth; ++i) {
        Rat bound = Rat(plan_.q[i]) * pow_rat(shrink, i);
        if (Rat(count((int)i)) > bound)
            return false;
    }
    return true;
}

Int SurvivorAnalysis::suggest_M() const {
    Int best = 2;
    for (long i = 1; i <= plan_.depth; ++i) {
        Int r;
        int exact = mpz_root(r.get_mpz_t(), plan_.q[i].get_mpz_t(), (unsigned long)i);
        Int mi = exact ? r : r + 1;
        if (mi > best)
            best = mi;
    }
    return best;
}

bool covers_growth_hypothesis(const SurvivorPlan& plan, const Int& M) {
    for (long i = 1; i <= plan.depth; ++i)
        if (plan.q[i] > pow_int(M, i))
            return false;
    return true;
}

RatInterval survivor_dimension_bound(const Rat& eps, const Int& M, long prec) {
    if (eps <= 0 || eps >= 1 || M < 2)
        throw precondition_error("dimension bound needs eps in (0,1) and M >= 2");
    RatInterval num = ln_enclosure(Rat(1) - eps / 32, prec);
    RatInterval den = ln_enclosure(Rat(M), prec);
    return RatInterval(Rat(1)) + num / den;
}

} // namespace diolab
