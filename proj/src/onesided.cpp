#include "diolab/onesided.hpp"

#include <algorithm>

#include "diolab/enclose.hpp"
#include "diolab/inhomog.hpp"

namespace diolab {

namespace {

// ceil(log2(m)) for m >= 2.
long ceil_log2(const Int& m) {
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    Int pow = pow2_int(static_cast<long>(bits) - 1);
    return pow == m ? static_cast<long>(bits) - 1 : static_cast<long>(bits);
}

} // namespace

Rat gamma_value(Alpha& al, long k, const OnesidedParams& p) {
    if (p.rule == GammaRule::constant) {
        if (p.gamma_const <= 0 || p.gamma_const >= 1)
            throw precondition_error("gamma constant must lie in (0, 1)");
        return p.gamma_const;
    }
    if (k < 0)
        throw precondition_error("gamma_value: negative level");
    return make_rat(Int(1), Int(ceil_log2(al.a(k) + 2)));
}

Rat delta_ratio(Alpha& al, long k) {
    if (k < 0)
        throw precondition_error("delta_ratio: negative level");
    return make_rat(al.q(k - 1), al.q(k));
}

RatInterval sqrt_eps(const Rat& eps) {
    if (eps <= 0 || eps >= 1)
        throw precondition_error("eps must lie in (0, 1)");
    return sqrt_enclosure(eps, 96);
}

bool level_hypothesis(Alpha& al, long k, const OnesidedParams& p) {
    Rat lhs = gamma_value(al, k, p) + Rat(2) * delta_ratio(al, k);
    for (unsigned prec = 64; prec <= 1024; prec *= 2) {
        RatInterval s = sqrt_enclosure(p.eps, prec);
        if (lhs < Rat(1) - Rat(2) * s.hi)
            return true;
        if (lhs >= Rat(1) - Rat(2) * s.lo)
            return false;
    }
    return false;
}

AdmissibleWindow admissible_window(Alpha& al, long k, const OnesidedParams& p) {
    RatInterval s = sqrt_eps(p.eps);
    Rat qk(al.q(k)), qk1(al.q(k - 1));
    AdmissibleWindow w;
    w.lo = s.hi * qk + qk1;
    w.hi = (s.lo + gamma_value(al, k, p)) * qk + qk1;
    return w;
}

namespace {

// Certifies quantity(depth) > need strictly. False means provably <= need.
template <class F>
bool cert_above(Alpha& al, long depth0, const Rat& need, F&& quantity) {
    return al.resolve(
        [&](long d) { return certified_lt(RatInterval(need), quantity(d)); },
        depth0);
}

} // namespace

PairCheck check_onesided_pair(Alpha& al, long k, const Int& n1, const Int& n2,
                              const OnesidedParams& p) {
    if (k < 1)
        throw precondition_error("pair check needs level >= 1");
    if (n1 < 1 || n1 > al.q(k))
        throw precondition_error("n1 is not a level-k index");
    Int diff = n2 - n1 - al.q(k - 1);
    if (diff <= 0 || diff % al.q(k) != 0)
        throw precondition_error("n2 - n1 - q_{k-1} must be a positive multiple of q_k");
    Int b = diff / al.q(k);
    if (b > al.a(k + 1) - 1)
        throw precondition_error("chain step leaves the parent arc");

    PairCheck pc;
    pc.k = k;
    pc.n1 = n1;
    pc.n2 = n2;
    pc.b = b;

    RatInterval s = sqrt_eps(p.eps);
    Rat qk(al.q(k));
    long d0 = std::max(al.depth_for(al.q(k + 1)), k + 4);

    pc.far_need = std::max(p.eps / Rat(n1), s.hi / qk);
    pc.near_need = std::max(p.eps / Rat(n1 + al.q(k - 1)), s.hi / qk);
    auto far_at = [&](long d) {
        return al.D(k - 1, d) - RatInterval(Rat(b + 1)) * al.D(k, d);
    };
    auto near_at = [&](long d) { return RatInterval(Rat(b)) * al.D(k, d); };
    pc.far_gap = far_at(d0);
    pc.near_gap = near_at(d0);
    pc.far_ok = cert_above(al, d0, pc.far_need, far_at);
    pc.near_ok = cert_above(al, d0, pc.near_need, near_at);

    // Between the edges the competing indices come in arithmetic families
    // n2 - d q_k and n2 + (d+1) q_k. The weighted products are concave resp.
    // increasing in d, so the family endpoints decide all members.
    pc.interior_ok = true;
    auto family_ok = [&](const Int& weight, const Int& index) {
        return cert_above(al, d0, p.eps, [&](long d) {
            return RatInterval(Rat(weight * index)) * al.D(k, d);
        });
    };
    Int dmax = floor_div(n2 - al.q(k) - 1, al.q(k));
    if (dmax >= 1) {
        pc.interior_ok = pc.interior_ok && family_ok(Int(1), n2 - al.q(k));
        if (dmax > 1)
            pc.interior_ok =
                pc.interior_ok && family_ok(dmax, n2 - dmax * al.q(k));
    }
    pc.interior_ok = pc.interior_ok && family_ok(Int(1), n2 + al.q(k));
    pc.interior_ok =
        pc.interior_ok && family_ok(Int(2), n2 + Int(2) * al.q(k));

    Rat gk = gamma_value(al, k, p), gk1 = gamma_value(al, k + 1, p);
    Rat dk = delta_ratio(al, k), dk1 = delta_ratio(al, k + 1);
    pc.eps_k = (s.hi + gk + Rat(2) * dk) * (s.hi + gk1 + Rat(2) * dk1);

    // Both endpoints of the child arc sit within eps_k / (n1 + q_{k-1}) of the
    // anchor orbit point; the far endpoint at distance (b+1) D_k dominates.
    Rat ball = pc.eps_k / Rat(n1 + al.q(k - 1));
    pc.shrink_ok = al.resolve(
        [&](long d) {
            return certified_lt(RatInterval(Rat(b + 1)) * al.D(k, d),
                                RatInterval(ball));
        },
        d0);

    pc.pass = pc.far_ok && pc.near_ok && pc.interior_ok && pc.shrink_ok;
    return pc;
}

ChainReport build_onesided_chain(Alpha& al, long K, long depth,
                                 const OnesidedParams& p) {
    if (K < 1 || depth < 1)
        throw precondition_error("chain needs K >= 1 and depth >= 1");
    ChainReport rep;
    rep.K = K;
    rep.depth = depth;
    for (long k = K; k <= K + depth; ++k) {
        bool h = level_hypothesis(al, k, p);
        rep.hypothesis.push_back(h);
        if (!h)
            throw precondition_error("one-sided hypothesis fails at a chain level");
    }

    AdmissibleWindow w = admissible_window(al, K, p);
    Int n = floor_rat(w.lo) + 1;
    if (!(Rat(n) < w.hi))
        throw precondition_error("admissible window at the start level is empty");

    for (long k = K; k < K + depth; ++k) {
        AdmissibleWindow nw = admissible_window(al, k + 1, p);
        Rat boff = (nw.lo - Rat(n + al.q(k - 1))) / Rat(al.q(k));
        Int b = floor_rat(boff) + 1;
        if (b < 1)
            b = 1;
        Int n2 = n + al.q(k - 1) + b * al.q(k);
        if (!(Rat(n2) < nw.hi))
            throw precondition_error("no admissible continuation at a chain level");
        rep.steps.push_back(check_onesided_pair(al, k, n, n2, p));
        n = n2;
    }

    rep.all_pass = true;
    for (const PairCheck& pc : rep.steps)
        rep.all_pass = rep.all_pass && pc.pass;
    return rep;
}

long descent_start_level(Alpha& al, const Rat& delta) {
    if (delta <= 0)
        throw precondition_error("delta must be positive");
    long cap = al.max_usable_depth();
    for (long K = 1; K + 1 <= cap; ++K) {
        Rat d = delta_ratio(al, K + 1);
        if (d + d * d < delta)
            return K;
    }
    throw precondition_error("no start level: convergent ratios stay too large");
}

DescentResult emptiness_descent(Alpha& al, const Rat& x, const Rat& eps,
                                const Rat& delta, long max_steps,
                                const Int& scan_limit) {
    if (delta <= 0)
        throw precondition_error("delta must be positive");
    Rat drop = eps - Rat(2) * delta - Rat(1, 4);
    if (drop <= 0)
        throw precondition_error("need eps - 2 delta > 1/4");
    if (max_steps < 1 || scan_limit < 1)
        throw precondition_error("descent budgets must be positive");

    long K = descent_start_level(al, delta);
    Int qK = al.q(K);
    Rat bar = eps - delta;

    DescentResult res;
    long k = K;
    Int n = locate(al, k, x);
    for (long step = 0; step < max_steps; ++step) {
        // The tested value n ||n alpha - x|| is irrational, so the strict
        // comparison against the rational bar always separates.
        bool hit = al.resolve(
            [&](long d) {
                RatInterval dist = al.inhom_dist(n, x, d);
                Rat thr = bar / Rat(n);
                if (dist.hi < thr)
                    return std::optional<bool>(true);
                if (dist.lo > thr)
                    return std::optional<bool>(false);
                return std::optional<bool>();
            },
            al.depth_for(n));
        res.log.push_back({k, n, hit, make_rat(n, al.q(k))});
        res.steps = step + 1;
        if (hit && n > qK) {
            res.refuted = true;
            res.witness = n;
            return res;
        }

        Int next = locate_step(al, k, n, x);
        if (!hit && n > qK) {
            Rat dk1 = delta_ratio(al, k + 1);
            if (!(dk1 + dk1 * dk1 < delta))
                throw precondition_error("convergent ratio bound fails at a visited level");
            Rat dec = make_rat(n, al.q(k)) - make_rat(next, al.q(k + 1));
            if (!(dec > drop))
                throw invariant_error("descent ratio failed to drop");
        }
        n = next;
        k += 1;
    }

    if (auto w = scan_witness(al, x, qK + 1, qK + scan_limit,
                              ScanMode::positive, bar)) {
        res.refuted = true;
        res.witness = *w;
        res.via_scan = true;
    }
    return res;
}

} // namespace diolab
