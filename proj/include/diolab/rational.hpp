#pragma once

#include <gmpxx.h>

#include <string>

#include "diolab/errors.hpp"

namespace diolab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw precondition_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

// Accepts "a/b" or "a" with optional sign. Denominator must be nonzero.
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw precondition_error("malformed rational: " + s);
    if (r.get_den() == 0) throw precondition_error("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Representative of n mod q in [1, q].
inline Int rep_mod(const Int& n, const Int& q) {
    Int r = mod_floor(n, q);
    if (r == 0) r = q;
    return r;
}

inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow2_int(unsigned long e) {
    Int r = 1;
    r <<= e;
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw precondition_error("zero base with negative exponent");
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r(pow_int(Int(base.get_num()), ue), pow_int(Int(base.get_den()), ue));
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Int floor_rat(const Rat& x) { return floor_div(Int(x.get_num()), Int(x.get_den())); }

inline Int ceil_rat(const Rat& x) { return ceil_div(Int(x.get_num()), Int(x.get_den())); }

// x - floor(x), in [0, 1).
inline Rat frac_part(const Rat& x) { return x - Rat(floor_rat(x)); }

// Distance from x to the nearest integer, in [0, 1/2].
inline Rat dist_to_int(const Rat& x) {
    Rat f = frac_part(x);
    Rat g = 1 - f;
    return f <= g ? f : g;
}

// Bits in |n|; 0 for n = 0.
inline unsigned long bit_length(const Int& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline double to_double(const Rat& x) { return x.get_d(); }

} // namespace diolab
