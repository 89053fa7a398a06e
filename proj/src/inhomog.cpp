#include "diolab/inhomog.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "diolab/errors.hpp"
#include "diolab/partition.hpp"

namespace diolab {

namespace {

// Integer model of the scan circle: alpha is pinned to [A, A+W]/D and all
// values live over the common denominator C = D xd, so the per-q state is a
// single residue updated by one addition and one conditional subtraction.
struct ScanBasis {
    Int A, W, D, C, xn, xd;
    Int t;     // A xd mod C, per-q increment
    Int ustep; // W xd, per-q width increment
};

ScanBasis basis_for(Alpha& al, const Rat& x, const Int& q_hi, long extra) {
    long d = std::min(al.depth_for(q_hi) + extra, al.max_usable_depth());
    RatInterval enc = al.enclosure(d);
    Int a1 = enc.lo.get_num(), b1 = enc.lo.get_den();
    Int a2 = enc.hi.get_num(), b2 = enc.hi.get_den();
    Int g = gcd(b1, b2);
    ScanBasis bs;
    bs.D = b1 / g * b2;
    bs.A = a1 * (bs.D / b1);
    bs.W = a2 * (bs.D / b2) - bs.A;
    bs.xn = x.get_num();
    bs.xd = x.get_den();
    bs.C = bs.D * bs.xd;
    bs.ustep = bs.W * bs.xd;
    bs.t = mod_floor(bs.A * bs.xd, bs.C);
    if (2 * bs.ustep * q_hi >= bs.C)
        throw precision_error("scan window too wide for the working precision");
    return bs;
}

struct BlockMin {
    Int lo2 = -1; // numerators over 2C; negative = empty
    Int hi2 = -1;
    Int arg = 0;
};

void merge_min(BlockMin& acc, const BlockMin& b) {
    if (b.hi2 < 0)
        return;
    if (acc.hi2 < 0 || b.hi2 < acc.hi2) {
        acc.hi2 = b.hi2;
        acc.arg = b.arg;
    }
    if (acc.lo2 < 0 || b.lo2 < acc.lo2)
        acc.lo2 = b.lo2;
}

// Distance band of the residue interval [s, s+u] on the circle of length C,
// doubled to stay integral: lo2/2 and hi2/2 bound the distance to {0, C}.
void dist_band(const Int& s, const Int& u, const Int& C, Int& e, Int& f,
               Int& lo2, Int& hi2) {
    e = C - s;
    if (e <= u) { // interval wraps through 0
        lo2 = 0;
        hi2 = u - e;
        if (e > hi2)
            hi2 = e;
        hi2 *= 2;
        return;
    }
    f = e - u; // C - (s+u)
    Int ds = s < e ? s : e;
    Int de = s + u < f ? Int(s + u) : f;
    lo2 = 2 * (ds < de ? ds : de);
    if (2 * s <= C && C <= 2 * (s + u))
        hi2 = C;
    else
        hi2 = 2 * (ds > de ? ds : de);
}

void scan_block(const ScanBasis& bs, int side, const Int& qa, const Int& qb,
                BlockMin& out) {
    Int s = mod_floor(qa * bs.t - side * bs.xn * bs.D, bs.C);
    Int u = qa * bs.ustep;
    Int e, f, lo2, hi2, vlo, vhi;
    for (Int q = qa; q <= qb; ++q) {
        dist_band(s, u, bs.C, e, f, lo2, hi2);
        vlo = lo2 * q;
        vhi = hi2 * q;
        if (out.hi2 < 0 || vhi < out.hi2) {
            out.hi2 = vhi;
            out.arg = side * q;
        }
        if (out.lo2 < 0 || vlo < out.lo2)
            out.lo2 = vlo;
        s += bs.t;
        if (s >= bs.C)
            s -= bs.C;
        u += bs.ustep;
    }
}

BlockMin scan_all(Alpha& al, const ScanBasis& bs, ScanMode mode, const Int& q_lo,
                  const Int& q_hi) {
    int nthreads = al.config().threads;
    Int span = q_hi - q_lo + 1;
    if (nthreads < 2 || span < 2 * nthreads) {
        BlockMin m;
        scan_block(bs, +1, q_lo, q_hi, m);
        if (mode == ScanMode::two_sided) {
            BlockMin m2;
            scan_block(bs, -1, q_lo, q_hi, m2);
            merge_min(m, m2);
        }
        return m;
    }
    Int chunk = ceil_div(span, nthreads);
    std::vector<BlockMin> part(2 * nthreads);
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) {
        Int a = q_lo + i * chunk;
        Int b = a + chunk - 1;
        if (b > q_hi)
            b = q_hi;
        if (a > b)
            continue;
        pool.emplace_back([&, i, a, b] {
            scan_block(bs, +1, a, b, part[2 * i]);
            if (mode == ScanMode::two_sided)
                scan_block(bs, -1, a, b, part[2 * i + 1]);
        });
    }
    for (auto& th : pool)
        th.join();
    BlockMin m;
    for (const BlockMin& p : part)
        merge_min(m, p); // fixed merge order keeps the result deterministic
    return m;
}

} // namespace

ScanReport liminf_scan(Alpha& al, const Rat& x, const Int& q_lo, const Int& q_hi,
                       ScanMode mode, const std::optional<Rat>& threshold) {
    if (q_lo < 1 || q_hi < q_lo)
        throw precondition_error("scan window needs 1 <= q_lo <= q_hi");
    ScanReport rep;
    rep.mode = mode;
    rep.q_lo = q_lo;
    rep.q_hi = q_hi;
    for (long extra = 0;; extra += 6) {
        ScanBasis bs = basis_for(al, x, q_hi, extra);
        BlockMin m = scan_all(al, bs, mode, q_lo, q_hi);
        Int den = 2 * bs.C;
        rep.min_lo = make_rat(m.lo2, den);
        rep.min_hi = make_rat(m.hi2, den);
        rep.argmin = m.arg;
        if (!threshold)
            return rep;
        rep.has_threshold = true;
        rep.threshold = *threshold;
        if (rep.min_hi < rep.threshold) {
            rep.below_threshold = true;
            return rep;
        }
        if (rep.min_lo >= rep.threshold) {
            rep.below_threshold = false;
            return rep;
        }
        if (extra >= 18)
            throw precision_error("window minimum straddles the threshold");
    }
}

std::optional<Int> scan_witness(Alpha& al, const Rat& x, const Int& q_lo,
                                const Int& q_hi, ScanMode mode,
                                const Rat& threshold) {
    if (q_lo < 1 || q_hi < q_lo)
        throw precondition_error("scan window needs 1 <= q_lo <= q_hi");
    ScanBasis bs = basis_for(al, x, q_hi, 0);
    Int tn = threshold.get_num(), td = threshold.get_den();
    Int bar = 2 * bs.C * tn; // compare against value numerator times td
    int nsides = mode == ScanMode::two_sided ? 2 : 1;
    Rat mx = -x;
    std::vector<Int> s(nsides), u(nsides);
    for (int i = 0; i < nsides; ++i) {
        int side = i == 0 ? +1 : -1;
        s[i] = mod_floor(q_lo * bs.t - side * bs.xn * bs.D, bs.C);
        u[i] = q_lo * bs.ustep;
    }
    Int e, f, lo2, hi2, v;
    for (Int q = q_lo; q <= q_hi; ++q) {
        for (int i = 0; i < nsides; ++i) {
            int side = i == 0 ? +1 : -1;
            dist_band(s[i], u[i], bs.C, e, f, lo2, hi2);
            v = hi2 * q * td;
            if (v < bar)
                return Int(side * q);
            v = lo2 * q * td;
            if (v < bar) {
                // band straddles the threshold: settle this q on its own
                const Rat& xx = side > 0 ? x : mx;
                bool below = al.resolve(
                    [&](long dd) {
                        RatInterval val =
                            RatInterval(Rat(q)) * al.inhom_dist(q, xx, dd);
                        return certified_lt(val, RatInterval(threshold));
                    },
                    al.depth_for(q) + 4);
                if (below)
                    return Int(side * q);
            }
        }
        for (int i = 0; i < nsides; ++i) {
            s[i] += bs.t;
            if (s[i] >= bs.C)
                s[i] -= bs.C;
            u[i] += bs.ustep;
        }
    }
    return std::nullopt;
}

namespace {

// v - 1 mod L, shifted back into [1, L].
Int wrap1(const Int& v, const Int& L) {
    Int r, vm = v - 1;
    mpz_fdiv_r(r.get_mpz_t(), vm.get_mpz_t(), L.get_mpz_t());
    return Int(r + 1);
}

// value n ||n alpha - x|| certified against eps, escalating depth.
bool value_below(Alpha& al, const Int& n, const Rat& x, const Rat& eps) {
    return al.resolve(
        [&](long d) {
            RatInterval v = RatInterval(Rat(n)) * al.inhom_dist(n, x, d);
            return certified_lt(v, RatInterval(eps));
        },
        al.depth_for(n) + 4);
}

// Violators with q_k < n <= hi_n must have frac(n alpha) within eps / q_k of
// x, and every such orbit point is a level-(k+1) partition endpoint. Walking
// arcs outward from the one containing x (index steps of -+ q_k mod q_{k+1})
// therefore meets all of them before the accumulated distance clears the
// radius. m is the level-(k+1) arc containing x.
std::optional<Int> block_witness(Alpha& al, const Rat& x, long k,
                                 const Int& hi_n, const Int& m,
                                 const Rat& eps) {
    Int qk = al.q(k), qk1 = al.q(k + 1);
    Rat r = eps / Rat(qk);
    std::vector<Int> cand;

    RatInterval off = owner_offset(al, k + 1, m, x);
    {
        RatInterval acc = off;
        Int j = m, steps = 0;
        while (acc.lo < r && steps <= qk1) {
            cand.push_back(j);
            Int jn = wrap1(j - qk, qk1);
            acc = acc + interval_length(al, k + 1, interval_type(al, k + 1, jn));
            j = jn;
            ++steps;
        }
    }
    {
        RatInterval acc =
            interval_length(al, k + 1, interval_type(al, k + 1, m)) - off;
        Int j = wrap1(m + qk, qk1), steps = 0;
        while (acc.lo < r && steps <= qk1) {
            cand.push_back(j);
            acc = acc + interval_length(al, k + 1, interval_type(al, k + 1, j));
            j = wrap1(j + qk, qk1);
            ++steps;
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const Int& j : cand) {
        if (j <= qk || j > hi_n)
            continue;
        if (value_below(al, j, x, eps))
            return j;
    }
    return std::nullopt;
}

} // namespace

BadMembership bad_membership(Alpha& al, const Rat& x0, const Rat& eps, long K,
                             const Int& Q) {
    if (eps <= 0)
        throw precondition_error("membership probe needs eps > 0");
    if (K < 0 || K > al.last_level())
        throw precondition_error("start level outside the expansion");
    Rat x = frac_part(x0);
    Int qK = al.q(K);
    if (Q < qK)
        throw precondition_error("scan bound below the start scale q_K");

    BadMembership out;
    out.scale = Q;

    // rational alpha: every value is an exact rational, scan directly
    if (al.spec().kind == SpecKind::rational) {
        Rat ar = al.convergent(al.last_level());
        if (Q - qK >= al.config().materialize_cap)
            throw budget_error("rational scan range exceeds the materialize cap");
        for (Int n = qK; n <= Q; ++n) {
            if (Rat(n) * dist_to_int(Rat(n) * ar - x) < eps) {
                out.certified_out = true;
                out.witness = n;
                return out;
            }
        }
        return out;
    }

    if (value_below(al, qK, x, eps)) {
        out.certified_out = true;
        out.witness = qK;
        return out;
    }
    if (Q == qK)
        return out;

    if (K + 1 > al.last_level())
        throw budget_error("scan bound beyond the computable expansion");
    long k = K;
    Int m = locate(al, K + 1, x);
    for (;;) {
        Int hi = al.q(k + 1) < Q ? al.q(k + 1) : Q;
        if (auto w = block_witness(al, x, k, hi, m, eps)) {
            out.certified_out = true;
            out.witness = *w;
            return out;
        }
        if (al.q(k + 1) >= Q)
            return out;
        if (k + 2 > al.last_level())
            throw budget_error("scan bound beyond the computable expansion");
        m = locate_step(al, k + 1, m, x);
        ++k;
    }
}

} // namespace diolab
