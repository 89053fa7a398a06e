#include "diolab/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "diolab/enclose.hpp"
#include "diolab/errors.hpp"

namespace diolab {

namespace {

const Rat& rank_width_floor() {
    static const Rat tiny = Rat(1) / pow_rat(Rat(10), 30);
    return tiny;
}

Int mod_floor(const Int& a, const Int& mod) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int pow_int(const Int& b, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

MatrixSpec MatrixSpec::from_json_text(const std::string& text, const Config& cfg) {
    nlohmann::json j = nlohmann::json::parse(text);
    MatrixSpec s;
    s.n = j.at("n").get<long>();
    s.m = j.at("m").get<long>();
    if (s.n < 1 || s.m < 1 || s.n + s.m > 5)
        throw precondition_error("matrix spec needs positive n, m with n + m <= 5");
    const auto& rows = j.at("entries");
    if (static_cast<long>(rows.size()) != s.n)
        throw precondition_error("matrix spec: entry rows do not match n");
    for (const auto& row : rows) {
        if (static_cast<long>(row.size()) != s.m)
            throw precondition_error("matrix spec: entry columns do not match m");
        std::vector<RealNumberSpec> r;
        for (const auto& e : row) {
            if (e.is_string())
                r.push_back(RealNumberSpec::resolve(e.get<std::string>(), cfg));
            else
                r.push_back(RealNumberSpec::from_json_text(e.dump(), cfg));
        }
        s.entries.push_back(std::move(r));
    }
    if (j.contains("rank_assumption"))
        s.rank_assumption = j["rank_assumption"].get<bool>();
    return s;
}

MatrixForms::MatrixForms(const MatrixSpec& spec, const Config& cfg)
    : spec_(spec), cfg_(cfg), n_(spec.n), m_(spec.m) {
    if (n_ < 1 || m_ < 1 || n_ + m_ > 5)
        throw precondition_error("matrix forms need positive n, m with n + m <= 5");
    if (static_cast<long>(spec_.entries.size()) != n_)
        throw precondition_error("matrix entries do not match n");
    al_.reserve(n_ * m_);
    for (long i = 0; i < n_; ++i) {
        if (static_cast<long>(spec_.entries[i].size()) != m_)
            throw precondition_error("matrix entries do not match m");
        for (long j = 0; j < m_; ++j)
            al_.push_back(std::make_unique<Alpha>(spec_.entries[i][j], cfg_));
    }
    depth_cap_ = al_[0]->max_usable_depth();
    for (const auto& a : al_) depth_cap_ = std::min(depth_cap_, a->max_usable_depth());
}

RatInterval MatrixForms::entry_enclosure(long i, long j, long depth) {
    if (i < 0 || i >= n_ || j < 0 || j >= m_)
        throw precondition_error("entry index out of range");
    return at(i, j).enclosure(std::min(depth, depth_cap_));
}

long MatrixForms::base_depth(const Int& scale) const {
    long d = 1;
    for (const auto& a : al_) d = std::max(d, a->depth_for(scale));
    return std::min(d, depth_cap_);
}

RatInterval MatrixForms::form_at_depth(const std::vector<Int>& y, long depth) {
    if (static_cast<long>(y.size()) != n_)
        throw precondition_error("form vector has wrong length");
    bool nz = false;
    for (const Int& c : y)
        if (c != 0) nz = true;
    if (!nz) throw precondition_error("form vector must be nonzero");
    if (depth > depth_cap_) depth = depth_cap_;
    RatInterval out{Rat(0), Rat(0)};
    for (long j = 0; j < m_; ++j) {
        RatInterval s{Rat(0), Rat(0)};
        for (long i = 0; i < n_; ++i) {
            if (y[i] == 0) continue;
            s = s + at(i, j).enclosure(depth) * Rat(y[i]);
        }
        RatInterval d = fold_to_nearest(s);
        if (j == 0)
            out = d;
        else
            out = RatInterval{std::max(out.lo, d.lo), std::max(out.hi, d.hi)};
    }
    if (out.lo == 0 && out.hi < rank_width_floor())
        throw rank_suspect_error(
            "form value pinned to zero below width 1e-30; integer relation suspected");
    return out;
}

RatInterval MatrixForms::form_dist(const std::vector<Int>& y, const Rat& budget) {
    if (budget <= 0) throw precondition_error("width budget must be positive");
    long d = 16;
    for (;;) {
        if (d > depth_cap_) d = depth_cap_;
        RatInterval e = form_at_depth(y, d);
        if (e.width() <= budget) return e;
        if (d >= depth_cap_)
            throw precision_error("form distance cannot reach the width budget");
        d *= 2;
    }
}

RatInterval MatrixForms::target_at_depth(const std::vector<Int>& q,
                                         const std::vector<Rat>& x, long depth) {
    if (static_cast<long>(q.size()) != m_ || static_cast<long>(x.size()) != n_)
        throw precondition_error("target evaluation has mismatched lengths");
    if (depth > depth_cap_) depth = depth_cap_;
    RatInterval out{Rat(0), Rat(0)};
    for (long i = 0; i < n_; ++i) {
        RatInterval s{Rat(0), Rat(0)};
        for (long j = 0; j < m_; ++j) {
            if (q[j] == 0) continue;
            s = s + at(i, j).enclosure(depth) * Rat(q[j]);
        }
        RatInterval d = fold_to_nearest(s - x[i]);
        if (i == 0)
            out = d;
        else
            out = RatInterval{std::max(out.lo, d.lo), std::max(out.hi, d.hi)};
    }
    return out;
}

RatInterval MatrixForms::target_dist(const std::vector<Int>& q,
                                     const std::vector<Rat>& x, const Rat& budget) {
    if (budget <= 0) throw precondition_error("width budget must be positive");
    long d = 16;
    for (;;) {
        if (d > depth_cap_) d = depth_cap_;
        RatInterval e = target_at_depth(q, x, d);
        if (e.width() <= budget) return e;
        if (d >= depth_cap_)
            throw precision_error("target distance cannot reach the width budget");
        d *= 2;
    }
}

namespace {

struct FormCand {
    std::vector<Int> y;
    long depth = 0;
    RatInterval enc{Rat(0), Rat(1)};
};

// Certified three-way order between M(a.y) and M(b.y): both enclosures are
// deepened until they separate or collapse to exact points. 0 only on exact
// equality.
int cmp_forms(MatrixForms& A, FormCand& a, FormCand& b) {
    long cap = A.depth_cap();
    for (;;) {
        auto lt = certified_lt(a.enc, b.enc);
        if (lt.has_value()) {
            if (*lt) return -1;
            if (a.enc.is_point() && b.enc.is_point() && a.enc.lo == b.enc.lo) return 0;
            return +1;
        }
        bool moved = false;
        if (!a.enc.is_point() && a.depth < cap) {
            a.depth = std::min(cap, a.depth * 2);
            a.enc = A.form_at_depth(a.y, a.depth);
            moved = true;
        }
        if (!b.enc.is_point() && b.depth < cap) {
            b.depth = std::min(cap, b.depth * 2);
            b.enc = A.form_at_depth(b.y, b.depth);
            moved = true;
        }
        if (!moved)
            throw precision_error("form distances cannot be ordered at the depth cap");
    }
}

// Lexicographic walk over the sup-norm-Y shell, first nonzero coordinate
// positive. Positions before the first nonzero admit only 0..Y; the last
// position is forced to +-Y when no earlier coordinate reached the shell.
void enum_shell(long n, const Int& Y, std::vector<Int>& cur, bool have_nz,
                bool have_max,
                const std::function<void(const std::vector<Int>&)>& fn) {
    long p = static_cast<long>(cur.size());
    if (p == n) {
        if (have_max) fn(cur);
        return;
    }
    bool last = p + 1 == n;
    if (last && !have_max) {
        if (have_nz) {
            cur.push_back(-Y);
            enum_shell(n, Y, cur, true, true, fn);
            cur.back() = Y;
            enum_shell(n, Y, cur, true, true, fn);
            cur.pop_back();
        } else {
            cur.push_back(Y);
            enum_shell(n, Y, cur, true, true, fn);
            cur.pop_back();
        }
        return;
    }
    for (Int v = have_nz ? Int(-Y) : Int(0); v <= Y; ++v) {
        cur.push_back(v);
        Int a = abs(v);
        enum_shell(n, Y, cur, have_nz || v != 0, have_max || a == Y, fn);
        cur.pop_back();
    }
}

void tighten(MatrixForms& A, FormCand& c, const Rat& width) {
    long cap = A.depth_cap();
    while (!c.enc.is_point() && c.enc.width() > width && c.depth < cap) {
        c.depth = std::min(cap, c.depth * 2);
        c.enc = A.form_at_depth(c.y, c.depth);
    }
}

} // namespace

BestApproxSeq best_approx_sequence(MatrixForms& A, const Int& y_max) {
    if (y_max < 1) throw precondition_error("y_max must be at least 1");
    long n = A.n();
    Int pts = 1;
    for (long i = 0; i < n; ++i) pts *= 2 * y_max + 1;
    if (pts > Int(A.config().bitset_cap))
        throw budget_error("best approximation lattice exceeds the enumeration budget");

    BestApproxSeq seq;
    seq.n = n;
    seq.m = A.m();
    seq.rank_assumption = A.spec().rank_assumption;

    const Rat report_width = Rat(1) / pow_rat(Rat(10), 12);
    std::optional<FormCand> best;
    std::vector<Int> scratch;
    for (Int Y = 1; Y <= y_max; ++Y) {
        long d0 = A.base_depth(Y);
        std::optional<FormCand> shell_best;
        scratch.clear();
        enum_shell(n, Y, scratch, false, false, [&](const std::vector<Int>& y) {
            FormCand c{y, d0, A.form_at_depth(y, d0)};
            if (!shell_best) {
                shell_best = std::move(c);
                return;
            }
            // ties keep the earlier, lexicographically smaller candidate
            if (cmp_forms(A, c, *shell_best) < 0) shell_best = std::move(c);
        });
        if (!shell_best) continue;
        if (best && cmp_forms(A, *shell_best, *best) >= 0) continue;
        tighten(A, *shell_best, report_width);
        seq.items.push_back({shell_best->y, Y, shell_best->enc});
        best = std::move(shell_best);
    }
    if (!seq.items.empty() && seq.items[0].Y != 1)
        throw invariant_error("first best approximation must have sup norm 1");

    // 1-based law Y_{i+3^{m+n}} >= 2 Y_{i+1} on every index where both exist
    size_t D = 1;
    for (long t = 0; t < n + A.m(); ++t) D *= 3;
    seq.doubling_ok = true;
    for (size_t i = 1; i + D <= seq.items.size(); ++i)
        if (seq.items[i - 1 + D].Y < 2 * seq.items[i].Y) seq.doubling_ok = false;
    return seq;
}

namespace {

// Integer brackets of one entry at scale 2^prec_bits, rounded outward.
struct ScaledEntry {
    Int lo, hi;
};

// Band distance to the nearest multiple of F for a value known to lie in
// [v_lo, v_hi]: sets d in [d_lo, d_hi], all times F.
void band_to_nearest(const Int& v_lo, const Int& v_hi, const Int& F,
                     const Int& half, Int& d_lo, Int& d_hi) {
    Int r = mod_floor(v_lo, F);
    Int w = v_hi - v_lo;
    if (r == 0 || r + w >= F) {
        d_lo = 0;
        d_hi = half;
        return;
    }
    Int b = F - (r + w);
    d_lo = r < b ? r : b;
    Int rw = r + w;
    if (r <= half && half <= rw) {
        d_hi = half;
        return;
    }
    Int fr = F - r;
    Int e1 = r < fr ? r : fr;
    Int e2 = rw < b ? rw : b;
    d_hi = e1 > e2 ? e1 : e2;
}

// Exhaustive per-point fallback with exact rational arithmetic; decides
// max_i ||(Ax)_i||^n <= c^n 2^{-ell m} with escalating depth.
bool exact_point_solves(MatrixForms& A, const std::vector<Int>& x, const Rat& thr_pow,
                        long n) {
    long d = A.base_depth(Int(2));
    for (;;) {
        RatInterval dist{Rat(0), Rat(0)};
        for (long i = 0; i < A.n(); ++i) {
            RatInterval s{Rat(0), Rat(0)};
            for (long j = 0; j < A.m(); ++j) {
                if (x[j] == 0) continue;
                s = s + A.entry_enclosure(i, j, d) * Rat(x[j]);
            }
            RatInterval f = fold_to_nearest(s);
            dist = i == 0 ? f
                          : RatInterval{std::max(dist.lo, f.lo), std::max(dist.hi, f.hi)};
        }
        if (pow_rat(dist.hi, n) <= thr_pow) return true;
        if (pow_rat(dist.lo, n) > thr_pow) return false;
        if (d >= A.depth_cap())
            throw precision_error("dyadic solvability tie at the depth cap");
        d = std::min(A.depth_cap(), d * 2);
    }
}

bool dirichlet_point_exists(MatrixForms& A, const Rat& c, long ell) {
    long n = A.n(), m = A.m();
    Int cn = c.get_num(), cd = c.get_den();
    // threshold at or above 1/2: x = e_1 always lands within distance 1/2
    if (pow_int(cn, n) * pow2_int(n) >= pow_int(cd, n) * pow2_int(ell * m)) return true;

    const unsigned prec = 128;
    Int F = pow2_int(prec);
    Int half = F / 2;
    Rat Fr = Rat(F);
    Rat entry_width = Rat(1) / Rat(pow2_int(prec + 8));
    std::vector<ScaledEntry> E(n * m);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) {
            long d = A.base_depth(pow2_int(ell));
            RatInterval e = A.entry_enclosure(i, j, d);
            while (e.width() > entry_width && d < A.depth_cap()) {
                d = std::min(A.depth_cap(), d * 2);
                e = A.entry_enclosure(i, j, d);
            }
            E[i * m + j] = {floor_rat(e.lo * Fr), ceil_rat(e.hi * Fr)};
        }

    Int X = pow2_int(ell);
    Int thr_hi = pow_int(cn, n) * pow_int(F, n);
    Int coef = pow_int(cd, n) * pow2_int(ell * m);
    Rat thr_pow = pow_rat(c, n) / Rat(pow2_int(ell * m));

    std::vector<Int> vlo(n, Int(0)), vhi(n, Int(0)), x(m, Int(0));
    Int d_lo, d_hi, t;
    std::function<bool(long, bool)> rec = [&](long j, bool have_nz) -> bool {
        if (j == m) {
            if (!have_nz) return false;
            bool undecided = false;
            for (long i = 0; i < n; ++i) {
                band_to_nearest(vlo[i], vhi[i], F, half, d_lo, d_hi);
                if (pow_int(d_lo, n) * coef > thr_hi) return false;
                if (pow_int(d_hi, n) * coef > thr_hi) undecided = true;
            }
            if (!undecided) return true;
            return exact_point_solves(A, x, thr_pow, n);
        }
        for (Int v = have_nz ? Int(-X) : Int(0); v <= X; ++v) {
            x[j] = v;
            for (long i = 0; i < n; ++i) {
                const ScaledEntry& se = E[i * m + j];
                if (v >= 0) {
                    t = v * se.lo;
                    vlo[i] += t;
                    t = v * se.hi;
                    vhi[i] += t;
                } else {
                    t = v * se.hi;
                    vlo[i] += t;
                    t = v * se.lo;
                    vhi[i] += t;
                }
            }
            bool hit = rec(j + 1, have_nz || v != 0);
            for (long i = 0; i < n; ++i) {
                const ScaledEntry& se = E[i * m + j];
                if (v >= 0) {
                    t = v * se.lo;
                    vlo[i] -= t;
                    t = v * se.hi;
                    vhi[i] -= t;
                } else {
                    t = v * se.hi;
                    vlo[i] -= t;
                    t = v * se.lo;
                    vhi[i] -= t;
                }
            }
            if (hit) return true;
        }
        x[j] = 0;
        return false;
    };
    return rec(0, false);
}

} // namespace

DensityReport matrix_dirichlet_density(MatrixForms& A, const Rat& c, long N) {
    if (c <= 0) throw precondition_error("c must be positive");
    if (N < 1) throw precondition_error("N must be at least 1");
    DensityReport rep;
    rep.c = c;
    long done = 0;
    for (long ell = 1; ell <= N; ++ell) {
        Int pts = 1;
        for (long j = 0; j < A.m(); ++j) pts *= 2 * pow2_int(ell) + 1;
        if (pts > Int(A.config().bitset_cap)) break;
        bool s = dirichlet_point_exists(A, c, ell);
        ++done;
        if (s)
            ++rep.solvable_count;
        else
            rep.bad_ell.push_back(ell);
    }
    if (done == 0) throw budget_error("no dyadic scale fits the enumeration budget");
    rep.N = done;
    rep.density = make_rat(Int(rep.solvable_count), Int(done));
    return rep;
}

GridSet grid_set(const std::vector<Int>& y, const Rat& delta, const Config& cfg) {
    long n = static_cast<long>(y.size());
    if (n < 1) throw precondition_error("grid vector must be nonempty");
    if (!(delta > 0) || !(delta < make_rat(Int(1), Int(2))))
        throw precondition_error("delta must lie in (0, 1/2)");
    long h = -1;
    Int yh = 0;
    for (long i = 0; i < n; ++i) {
        Int a = abs(y[i]);
        if (a > yh) {
            yh = a;
            h = i;
        }
    }
    if (h < 0) throw precondition_error("grid vector must be nonzero");
    Int count = 1;
    for (long i = 0; i < n; ++i) count *= yh;
    if (count > Int(cfg.materialize_cap))
        throw budget_error("grid center count exceeds the materialization budget");

    GridSet gs;
    gs.h = h;
    gs.y_h_abs = yh;
    Int s2 = 0;
    for (long i = 0; i < n; ++i) s2 += y[i] * y[i];
    RatInterval rt = sqrt_enclosure(Rat(s2), 96);
    gs.radius = (Rat(1) - 2 * delta) / (2 * rt.hi);

    int sign = y[h] > 0 ? 1 : -1;
    const Rat half = make_rat(Int(1), Int(2));
    std::vector<Int> j(n, Int(0));
    for (;;) {
        Int sp = 0;
        for (long i = 0; i < n; ++i)
            if (i != h) sp += y[i] * j[i];
        // t solves sign * (1/2 - sp/yh) = yh * t mod 1
        Rat t = frac_part(make_rat(Int(sign) * (yh - 2 * sp), 2 * yh)) / Rat(yh);
        std::vector<Rat> w(n);
        for (long i = 0; i < n; ++i) {
            w[i] = make_rat(j[i], yh);
            if (i == h) w[i] += t;
        }
        Rat dot = 0;
        for (long i = 0; i < n; ++i) dot += Rat(y[i]) * w[i];
        if (dist_to_int(dot) != half)
            throw invariant_error("grid center misses the half-integer identity");
        gs.centers.push_back(std::move(w));
        long p = n - 1;
        while (p >= 0) {
            ++j[p];
            if (j[p] < yh) break;
            j[p] = 0;
            --p;
        }
        if (p < 0) break;
    }

    // axis probes just inside the first center's ball stay above delta
    const std::vector<Rat>& w0 = gs.centers.front();
    Rat rr = gs.radius * make_rat(Int(63), Int(64));
    for (long i = 0; i < n; ++i)
        for (int sgn : {1, -1}) {
            Rat dot = 0;
            for (long u = 0; u < n; ++u) {
                Rat coord = w0[u];
                if (u == i) coord += Rat(sgn) * rr;
                dot += Rat(y[u]) * coord;
            }
            if (!(dist_to_int(dot) > delta))
                throw invariant_error("grid ball probe leaves the guarded region");
        }
    return gs;
}

bool grid_separated(const GridSet& gs, const Rat& bound) {
    const Int& yh = gs.y_h_abs;
    if (bound > make_rat(Int(1), yh)) return false;
    // non-dominant coordinates must sit on the (1/yh) grid; then centers in
    // different fibers already differ by a full step in one coordinate
    std::map<std::vector<Rat>, std::vector<Rat>> fibers;
    for (const auto& w : gs.centers) {
        std::vector<Rat> key;
        for (long i = 0; i < static_cast<long>(w.size()); ++i) {
            if (i == gs.h) continue;
            Rat scaled = w[i] * Rat(yh);
            if (scaled.get_den() != 1) return false;
            key.push_back(w[i]);
        }
        fibers[std::move(key)].push_back(w[gs.h]);
    }
    for (auto& [key, hs] : fibers) {
        (void)key;
        std::sort(hs.begin(), hs.end());
        for (size_t t = 1; t < hs.size(); ++t)
            if (hs[t] - hs[t - 1] < bound) return false;
    }
    return true;
}

long transference_index(const BestApproxSeq& bas, const Rat& delta, const Int& q_sup) {
    if (bas.items.empty())
        throw precondition_error("empty best approximation sequence");
    if (!(delta > 0) || delta > make_rat(Int(1), Int(2)))
        throw precondition_error("delta must lie in (0, 1/2]");
    if (q_sup < 1) throw precondition_error("q must be nonzero");
    Rat bp = pow_rat(Rat(2 * bas.m) / delta, bas.m) * pow_rat(Rat(q_sup), bas.m);
    long k = 0;
    for (size_t i = 0; i < bas.items.size(); ++i) {
        if (pow_rat(Rat(bas.items[i].Y), bas.n) <= bp)
            k = static_cast<long>(i) + 1;
        else
            break;
    }
    if (k == 0) throw invariant_error("selection bound fell below Y_1 = 1");
    if (k == static_cast<long>(bas.items.size()))
        throw budget_error("best approximation sequence too short to bracket this q");
    return k;
}

TransferenceCertificate transference_certificate(MatrixForms& A,
                                                 const BestApproxSeq& bas,
                                                 const Rat& delta,
                                                 const std::vector<Int>& q,
                                                 const std::vector<Rat>& x) {
    long n = A.n(), m = A.m();
    if (bas.n != n || bas.m != m)
        throw precondition_error("sequence does not match the matrix shape");
    if (static_cast<long>(q.size()) != m || static_cast<long>(x.size()) != n)
        throw precondition_error("q or x has the wrong length");
    Int qs = 0;
    for (const Int& v : q) {
        Int a = abs(v);
        if (a > qs) qs = a;
    }
    if (qs == 0) throw precondition_error("q must be nonzero");
    long k = transference_index(bas, delta, qs);
    const BestApprox& it = bas.items[k - 1];

    Rat dot = 0;
    for (long i = 0; i < n; ++i) dot += Rat(it.y[i]) * x[i];
    if (dist_to_int(dot) < delta)
        throw precondition_error("target fails the grid hypothesis at the selected level");

    TransferenceCertificate cert;
    cert.k = k;
    cert.rank_assumption = bas.rank_assumption;

    // decay hypothesis M(y_k)^m Y_{k+1}^n <= 1, tri-state
    Rat ypow = pow_rat(Rat(bas.items[k].Y), n);
    RatInterval mk = it.M;
    long d = std::max(A.base_depth(it.Y), long(16));
    for (int round = 0;; ++round) {
        if (pow_rat(mk.hi, m) * ypow <= 1) {
            cert.decay_ok = true;
            break;
        }
        if (pow_rat(mk.lo, m) * ypow > 1) {
            cert.decay_ok = false;
            break;
        }
        if (round >= A.config().escalation_rounds || d >= A.depth_cap()) break;
        d = std::min(A.depth_cap(), d * 2);
        mk = A.form_at_depth(it.y, d);
    }

    // certified bound: dist^n |q|^m >= delta^{n+m} / ((2n)^n (2m)^m)
    Rat cpow = pow_rat(delta, n + m) / (pow_rat(Rat(2 * n), n) * pow_rat(Rat(2 * m), m));
    Rat qpow = pow_rat(Rat(qs), m);
    long dd = std::max(A.base_depth(qs), long(16));
    RatInterval dist{Rat(0), Rat(1)};
    for (;;) {
        dist = A.target_at_depth(q, x, dd);
        if (pow_rat(dist.lo, n) * qpow >= cpow) break;
        if (pow_rat(dist.hi, n) * qpow < cpow) {
            if (cert.decay_ok && *cert.decay_ok)
                throw invariant_error("transference bound fails with certified hypotheses");
            throw precondition_error("decay hypothesis unavailable and the bound is not met");
        }
        if (dd >= A.depth_cap())
            throw precision_error("transference bound undecided at the depth cap");
        dd = std::min(A.depth_cap(), dd * 2);
    }

    RatInterval ce = pow_enclosure(delta / Rat(2 * m), make_rat(Int(m), Int(n)), 96) *
                     (delta / Rat(2 * n));
    cert.lower_bound = ce.lo;
    RatInterval qmn = pow_enclosure(Rat(qs), make_rat(Int(m), Int(n)), 96);
    cert.slack = qmn * dist - ce;
    return cert;
}

RatInterval transference_constant(long n, long m, unsigned prec) {
    if (n < 1 || m < 1) throw precondition_error("n and m must be positive");
    return pow_enclosure(make_rat(Int(1), Int(4 * m)), make_rat(Int(m), Int(n)), prec) *
           make_rat(Int(1), Int(4 * n));
}

} // namespace diolab
