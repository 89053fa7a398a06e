#include "diolab/singular.hpp"

#include <algorithm>

#include "diolab/enclose.hpp"

namespace diolab {

long convergent_block(Alpha& al, long ell) {
    if (ell < 1)
        throw precondition_error("ell must be >= 1");
    Int bound = pow2_int(ell);
    long cap = al.last_level();
    long k = 0;
    while (k + 1 <= cap && al.q(k + 1) <= bound)
        ++k;
    return k;
}

bool dirichlet_solvable(Alpha& al, const Rat& c, long ell) {
    if (c <= 0)
        throw precondition_error("c must be positive");
    if (ell < 1)
        throw precondition_error("ell must be >= 1");
    Rat thr = c / Rat(pow2_int(ell));
    if (thr >= Rat(1, 2))
        return true;
    long k = convergent_block(al, ell);
    return al.resolve(
        [&](long d) {
            RatInterval Dk = al.D(k, d);
            if (Dk.hi <= thr)
                return std::optional<bool>(true);
            if (Dk.lo > thr)
                return std::optional<bool>(false);
            return std::optional<bool>();
        },
        k + 4);
}

DensityReport singular_average_density(Alpha& al, const Rat& c, long N) {
    if (N < 1)
        throw precondition_error("N must be >= 1");
    DensityReport rep;
    rep.c = c;
    rep.N = N;
    for (long ell = 1; ell <= N; ++ell) {
        long k = convergent_block(al, ell);
        if (rep.blocks.empty() || rep.blocks.back().k != k)
            rep.blocks.push_back({k, ell, ell, 0});
        else
            rep.blocks.back().ell_hi = ell;
        if (dirichlet_solvable(al, c, ell)) {
            ++rep.solvable_count;
        } else {
            rep.bad_ell.push_back(ell);
            ++rep.blocks.back().bad_count;
        }
    }
    rep.density = make_rat(Int(rep.solvable_count), Int(N));
    return rep;
}

GrowthStats growth_stats(Alpha& al, long K, unsigned prec) {
    if (K < 2)
        throw precondition_error("K must be >= 2");
    GrowthStats st;
    st.K = K;
    RatInterval sum_log_a(Rat(0));
    for (long k = 1; k <= K; ++k) {
        sum_log_a = sum_log_a + ln_enclosure(Rat(al.a(k)), prec);
        st.log_q_over_k.push_back(ln_enclosure(Rat(al.q(k)), prec) / Rat(k));
        st.avg_log_a.push_back(sum_log_a / Rat(k));
    }
    return st;
}

RatInterval heaviness_stat(Alpha& al, const Rat& eta, long N, unsigned prec) {
    if (eta <= 0)
        throw precondition_error("eta must be positive");
    if (N < 1)
        throw precondition_error("N must be >= 1");
    RatInterval sum(Rat(0));
    for (long k = 1; k <= N; ++k) {
        Rat t = eta * Rat(al.a(k));
        if (t > 1)
            sum = sum + ln_enclosure(t, prec);
    }
    return sum / Rat(N);
}

bool heaviness_at_most(Alpha& al, const Rat& delta, const Rat& eta, long N) {
    for (unsigned prec = 64; prec <= 1024; prec *= 2) {
        RatInterval v = heaviness_stat(al, eta, N, prec);
        if (v.hi <= delta)
            return true;
        if (v.lo > delta)
            return false;
    }
    throw precision_error("heaviness statistic ties the bound");
}

Int no_singular_witness(Alpha& al, const Rat& c, long k) {
    if (c <= 0)
        throw precondition_error("c must be positive");
    if (k < 0)
        throw precondition_error("negative level");
    Int X = al.q(k + 1) - 1;
    if (X < 1)
        throw precondition_error("scale window is empty at this level");
    // Unsolvable at X < q_{k+1} iff D_k * X > c.
    bool fails = al.resolve(
        [&](long d) {
            return certified_lt(RatInterval(c),
                                al.D(k, d) * RatInterval(Rat(X)));
        },
        k + 4);
    if (!fails)
        throw precondition_error("scale is solvable for this c at this level");
    return X;
}

} // namespace diolab
