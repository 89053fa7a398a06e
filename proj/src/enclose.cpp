#include "diolab/enclose.hpp"

namespace diolab {

RatInterval sqrt_enclosure(const Rat& x, unsigned prec_bits) {
    if (x < 0) throw precondition_error("sqrt of negative rational");
    if (x == 0) return RatInterval(Rat(0));
    // sqrt(p/q) = sqrt(p*q)/q. Scale by 4^m so the integer root carries m
    // extra bits: t = isqrt(p*q*4^m) gives t <= sqrt(p*q)*2^m < t+1.
    Int p = x.get_num(), q = x.get_den();
    Int scaled = p * q;
    scaled <<= 2 * prec_bits;
    Int t = isqrt(scaled);
    Int den = q;
    den <<= prec_bits;
    if (t * t == scaled) return RatInterval(make_rat(t, den));
    return {make_rat(t, den), make_rat(t + 1, den)};
}

RatInterval nth_root_enclosure(const Rat& x, unsigned long n, unsigned prec_bits) {
    if (n == 0) throw precondition_error("zeroth root");
    if (x < 0) throw precondition_error("root of negative rational");
    if (x == 0) return RatInterval(Rat(0));
    if (n == 1) return RatInterval(x);
    // x^(1/n) = (p*q^(n-1))^(1/n) / q, scaled by 2^(n*m).
    Int p = x.get_num(), q = x.get_den();
    Int scaled = p * pow_int(q, n - 1);
    scaled <<= n * static_cast<unsigned long>(prec_bits);
    Int t;
    int exact = mpz_root(t.get_mpz_t(), scaled.get_mpz_t(), n);
    Int den = q;
    den <<= prec_bits;
    if (exact) return RatInterval(make_rat(t, den));
    return {make_rat(t, den), make_rat(t + 1, den)};
}

RatInterval ln2_enclosure(unsigned prec_bits) {
    // ln 2 = sum_{k>=1} 1/(k 2^k); tail after N terms is below 2^-N / (N+1).
    unsigned long N = prec_bits + 2;
    Rat s(0);
    Int pw = 2;
    for (unsigned long k = 1; k <= N; ++k) {
        s += make_rat(Int(1), Int(k) * pw);
        pw <<= 1;
    }
    Rat tail = make_rat(Int(1), Int(N + 1) * pow2_int(N));
    return {s, s + tail};
}

namespace {

// ln(m) for m in [1, 2) via 2 atanh((m-1)/(m+1)); u < 1/3 so terms decay by
// at least 9x and the tail after J odd-power terms is under (9/4) u^(2J+1) / (2J+1).
RatInterval ln_mantissa(const Rat& m, unsigned prec_bits) {
    if (m == 1) return RatInterval(Rat(0));
    Rat u = (m - 1) / (m + 1);
    Rat u2 = u * u;
    unsigned long J = prec_bits / 3 + 3;
    Rat s(0);
    Rat upow = u;
    for (unsigned long j = 0; j < J; ++j) {
        s += upow / Rat(2 * j + 1);
        upow *= u2;
    }
    s *= 2;
    Rat tail = make_rat(9, 4) * upow / Rat(2 * J + 1);
    return {s, s + tail};
}

} // namespace

RatInterval ln_enclosure(const Rat& x, unsigned prec_bits) {
    if (x <= 0) throw precondition_error("log of nonpositive rational");
    if (x == 1) return RatInterval(Rat(0));
    // Normalize x = 2^e * m with m in [1, 2).
    long e = static_cast<long>(bit_length(Int(x.get_num()))) -
             static_cast<long>(bit_length(Int(x.get_den())));
    Rat m = x / pow_rat(Rat(2), e);
    while (m >= 2) {
        m /= 2;
        ++e;
    }
    while (m < 1) {
        m *= 2;
        --e;
    }
    RatInterval lm = ln_mantissa(m, prec_bits);
    if (e == 0) return lm;
    return ln2_enclosure(prec_bits) * Rat(e) + lm;
}

RatInterval ln_enclosure(const RatInterval& x, unsigned prec_bits) {
    if (x.lo <= 0) throw precondition_error("log of enclosure reaching zero");
    RatInterval a = ln_enclosure(x.lo, prec_bits);
    RatInterval b = ln_enclosure(x.hi, prec_bits);
    return {a.lo, b.hi};
}

RatInterval pow_enclosure(const Rat& x, const Rat& e, unsigned prec_bits) {
    if (x <= 0) throw precondition_error("power of nonpositive base");
    Int u = e.get_num(), v = e.get_den();
    bool neg = u < 0;
    if (neg) u = -u;
    if (!u.fits_ulong_p() || !v.fits_ulong_p())
        throw budget_error("power exponent too large for certified evaluation");
    Rat base = pow_rat(x, static_cast<long>(u.get_ui()));
    RatInterval r = nth_root_enclosure(base, v.get_ui(), prec_bits);
    if (!neg) return r;
    if (r.lo <= 0) throw precision_error("enclosure hit zero while inverting power");
    return {1 / r.hi, 1 / r.lo};
}

} // namespace diolab
