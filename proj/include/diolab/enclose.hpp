#pragma once

#include "diolab/interval.hpp"

namespace diolab {

// Certified enclosures of irrational elementary values. Every function returns
// an interval with rational endpoints that provably contains the exact value;
// width shrinks as prec_bits grows. Exactly representable results collapse to
// point intervals.

// sqrt(x) for x >= 0. Width at most 1/(den(x) * 2^prec_bits).
RatInterval sqrt_enclosure(const Rat& x, unsigned prec_bits);

// x^(1/n) for x >= 0, n >= 1.
RatInterval nth_root_enclosure(const Rat& x, unsigned long n, unsigned prec_bits);

// Natural log of 2, width below 2^-prec_bits.
RatInterval ln2_enclosure(unsigned prec_bits);

// ln(x) for x > 0.
RatInterval ln_enclosure(const Rat& x, unsigned prec_bits);

// x^e for x > 0 and rational e, via integer powers and an n-th root.
RatInterval pow_enclosure(const Rat& x, const Rat& e, unsigned prec_bits);

// ln of an interval with positive lower end.
RatInterval ln_enclosure(const RatInterval& x, unsigned prec_bits);

} // namespace diolab
