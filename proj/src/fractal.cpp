#include "diolab/fractal.hpp"

#include <algorithm>
#include <cmath>

#include "diolab/enclose.hpp"
#include "diolab/errors.hpp"

namespace diolab {

std::vector<IntervalCover> erdos_taylor_cover(const std::vector<Int>& n_seq,
                                              const Rat& delta, long depth,
                                              const Config& cfg) {
    if (!(delta > 0 && delta < Rat(1, 2)))
        throw precondition_error("separation parameter must lie in (0, 1/2)");
    if (depth < 1 || (size_t)depth > n_seq.size())
        throw precondition_error("cover depth exceeds the supplied scale list");
    if (n_seq.front() < 1)
        throw precondition_error("scales must be positive");
    for (size_t i = 1; i < n_seq.size(); ++i) {
        if (!(n_seq[i] > n_seq[i - 1]))
            throw precondition_error("scales must increase");
        if (Rat(n_seq[i]) * (Rat(1) - 2 * delta) < 4 * Rat(n_seq[i - 1]))
            throw precondition_error("scale growth violates the cover hypothesis");
    }

    const std::vector<std::pair<Rat, Rat>> root{{Rat(0), Rat(1)}};
    std::vector<IntervalCover> out;
    for (long g = 1; g <= depth; ++g) {
        const auto& parents = out.empty() ? root : out.back().intervals;
        Rat nn(n_seq[g - 1]);
        IntervalCover cov;
        cov.generation = g;
        cov.len_max = (Rat(1) - 2 * delta) / nn;
        Int m_min(-1);
        bool capped = false;
        for (const auto& pb : parents) {
            Int jlo = ceil_rat(pb.first * nn - delta);
            Int jhi = floor_rat(pb.second * nn - Rat(1) + delta);
            Int cnt = jhi - jlo + 1;
            if (cnt < 0) cnt = 0;
            if (m_min < 0 || cnt < m_min) m_min = cnt;
            if (cnt > 0) {
                Rat first_lo = (Rat(jlo) + delta) / nn;
                Rat last_hi = (Rat(jhi) + Rat(1) - delta) / nn;
                if (first_lo < pb.first || last_hi > pb.second)
                    throw invariant_error("cover children escaped their parent");
            }
            for (Int j = jlo; j <= jhi; ++j) {
                if ((long)cov.intervals.size() >= cfg.cover_cap) {
                    capped = true;
                    break;
                }
                cov.intervals.emplace_back((Rat(j) + delta) / nn,
                                           (Rat(j) + Rat(1) - delta) / nn);
            }
            if (capped) break;
        }
        if (capped) {
            if (out.empty())
                throw budget_error("first cover generation exceeds the interval cap");
            out.back().truncated = true;
            break;
        }
        cov.m = m_min;
        cov.gap = Rat(1); // vacuous until a second interval exists
        bool have_gap = false;
        for (size_t i = 1; i < cov.intervals.size(); ++i) {
            Rat d = cov.intervals[i].first - cov.intervals[i - 1].second;
            if (!have_gap || d < cov.gap) {
                cov.gap = d;
                have_gap = true;
            }
        }
        out.push_back(std::move(cov));
    }
    return out;
}

RatInterval mass_dist_lower_bound(const std::vector<IntervalCover>& covers,
                                  long g, unsigned prec) {
    if (covers.size() < 3)
        throw precondition_error("dimension bound needs at least three generations");
    long deepest = (long)covers.size();
    if (g == 0) g = deepest;
    if (g < 2 || g > deepest)
        throw precondition_error("generation index out of range");
    for (long i = 0; i < g; ++i)
        if (covers[i].m < 2)
            throw precondition_error("mass distribution needs at least two children per parent");
    Rat scale = Rat(covers[g - 1].m) * covers[g - 1].gap;
    if (scale >= 1)
        throw precondition_error("deepest generation too coarse for a dimension bound");

    unsigned p = prec;
    for (int round = 0; round < 8; ++round, p *= 2) {
        RatInterval den = -ln_enclosure(scale, p);
        if (!(den.lo > 0)) continue;
        RatInterval num(Rat(0));
        for (long i = 0; i + 1 < g; ++i)
            num = num + ln_enclosure(Rat(covers[i].m), p);
        RatInterval val = num / den;
        Rat lo = val.lo, hi = val.hi;
        if (lo < 0) lo = 0;
        if (lo > 1) lo = 1;
        if (hi < 0) hi = 0;
        if (hi > 1) hi = 1;
        return RatInterval(lo, hi);
    }
    throw precision_error("cannot separate the bound denominator from zero");
}

SparseTimes sparse_times(Alpha& al, const Rat& eps, long K, long depth) {
    if (eps <= 0 || eps >= 1)
        throw precondition_error("removal ratio must lie in (0, 1)");
    if (K < 0 || depth < 1)
        throw precondition_error("sparse schedule parameters out of range");
    SurvivorPlan plan = survivor_plan(al, K, eps, depth);
    SparseTimes st;
    st.levels = plan.levels;
    for (size_t i = 1; i < st.levels.size(); ++i)
        st.max_gap = std::max(st.max_gap, st.levels[i] - st.levels[i - 1]);
    // q_{k+2} >= 2 q_k, so q doubles at least every two levels; one extra
    // level turns the accumulated >= into the strict > the schedule needs.
    long t = 0;
    Rat pw(1);
    while (pw * eps < 12) {
        pw *= 2;
        ++t;
    }
    st.gap_bound = 2 * t + 1;
    if (st.max_gap > st.gap_bound)
        throw invariant_error("sparse gaps exceed their uniform bound");
    return st;
}

std::vector<long> phi_subsequence(Alpha& al, const Rat& R, long kmax) {
    if (R <= 1)
        throw precondition_error("growth ratio must exceed 1");
    if (kmax < 2)
        throw precondition_error("need at least two computed levels");
    long last_jump = -1;
    for (long j = 0; j + 1 <= kmax; ++j)
        if (Rat(al.q(j + 1)) >= R * Rat(al.q(j)))
            last_jump = j;
    if (last_jump < 0)
        throw precondition_error("no fast growth step within the computed range");

    // Walk backward; picking the largest index with q <= q_cur / R keeps the
    // next-level value above q_cur / R, which is the second inequality.
    std::vector<long> chain{last_jump + 1};
    long cur = last_jump + 1;
    while (true) {
        Rat thr = Rat(al.q(cur)) / R;
        long pick = -1;
        for (long i = cur - 1; i >= 0; --i)
            if (Rat(al.q(i)) <= thr) {
                pick = i;
                break;
            }
        if (pick < 0) break;
        chain.push_back(pick);
        cur = pick;
    }
    std::reverse(chain.begin(), chain.end());
    for (size_t i = 1; i < chain.size(); ++i) {
        bool grow = Rat(al.q(chain[i])) >= R * Rat(al.q(chain[i - 1]));
        bool back = Rat(al.q(chain[i - 1] + 1)) >= Rat(al.q(chain[i])) / R;
        if (!grow || !back)
            throw invariant_error("subsequence construction violated its growth contract");
    }
    return chain;
}

SurvivorCoverReport survivor_cover(Alpha& al, const Rat& eps, long K, long depth,
                                   const Int& M) {
    SurvivorPlan plan = survivor_plan(al, K, eps, depth);
    SurvivorAnalysis an(al, std::move(plan));
    SurvivorCoverReport rep;
    rep.plan = an.plan();
    for (long i = 0; i <= depth; ++i)
        rep.counts.push_back(an.count((int)i));
    rep.M = (M == 0) ? an.suggest_M() : M;
    rep.growth_ok = covers_growth_hypothesis(rep.plan, rep.M);
    rep.counts_ok = an.counts_within_bound();
    if (rep.growth_ok)
        rep.upper = survivor_dimension_bound(eps, rep.M);
    return rep;
}

RatInterval SurvivorCoverReport::s_cost(const Rat& s, long gen, unsigned prec) const {
    if (gen < 0 || (size_t)gen >= counts.size())
        throw precondition_error("generation index out of range");
    if (s <= 0)
        throw precondition_error("cost exponent must be positive");
    Rat base = Rat(2) / Rat(plan.q[gen]);
    return pow_enclosure(base, s, prec) * Rat(counts[gen]);
}

namespace {

BoxCountEstimate fit_boxes(const std::vector<std::pair<Rat, Rat>>& ivs,
                           const std::vector<Rat>& scales) {
    if (ivs.empty())
        throw precondition_error("nothing to count");
    for (size_t i = 0; i < ivs.size(); ++i) {
        if (ivs[i].second < ivs[i].first ||
            (i > 0 && !(ivs[i - 1].second < ivs[i].first)))
            throw precondition_error("intervals must be sorted and disjoint");
    }
    std::vector<Rat> sc = scales;
    std::sort(sc.begin(), sc.end(), [](const Rat& a, const Rat& b) { return a > b; });
    sc.erase(std::unique(sc.begin(), sc.end()), sc.end());
    if (sc.size() < 4)
        throw precondition_error("need at least four distinct scales");
    for (const auto& e : sc)
        if (!(e > 0 && e < 1))
            throw precondition_error("scales must lie in (0, 1)");
    if (sc.front() < Rat(100) * sc.back())
        throw precondition_error("scales must span at least two decades");

    BoxCountEstimate est;
    for (const auto& e : sc) {
        Int total(0);
        Int last(0);
        bool have_last = false;
        for (const auto& iv : ivs) {
            Int ilo = floor_rat(iv.first / e);
            Int ihi = floor_rat(iv.second / e);
            if (have_last && ilo <= last) ilo = last + 1;
            if (ihi >= ilo) {
                total += ihi - ilo + 1;
                last = ihi;
                have_last = true;
            }
        }
        est.counts.emplace_back(e, total);
    }
    bool degenerate = true;
    for (const auto& pr : est.counts)
        if (pr.second != 1) degenerate = false;
    if (degenerate)
        throw precondition_error("set occupies a single box at every scale");

    size_t T = est.counts.size();
    std::vector<double> xs(T), ys(T);
    double mx = 0, my = 0;
    for (size_t i = 0; i < T; ++i) {
        xs[i] = -std::log(est.counts[i].first.get_d());
        ys[i] = std::log(est.counts[i].second.get_d());
        mx += xs[i];
        my += ys[i];
    }
    mx /= (double)T;
    my /= (double)T;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < T; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    double ss = 0;
    for (size_t i = 0; i < T; ++i) {
        double r = ys[i] - (est.slope * xs[i] + est.intercept);
        ss += r * r;
    }
    est.residual_rms = std::sqrt(ss / (double)T);
    return est;
}

} // namespace

BoxCountEstimate box_dimension_estimate(const std::vector<std::pair<Rat, Rat>>& intervals,
                                        const std::vector<Rat>& scales) {
    return fit_boxes(intervals, scales);
}

BoxCountEstimate box_dimension_estimate(const std::vector<Rat>& points,
                                        const std::vector<Rat>& scales) {
    std::vector<Rat> ps = points;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<std::pair<Rat, Rat>> ivs;
    ivs.reserve(ps.size());
    for (const auto& p : ps) ivs.emplace_back(p, p);
    return fit_boxes(ivs, scales);
}

} // namespace diolab
