#pragma once

#include <optional>

#include "diolab/errors.hpp"
#include "diolab/rational.hpp"

namespace diolab {

// Closed interval with rational endpoints, lo <= hi. All arithmetic is outward
// exact: the result interval contains every value f(x) with x in the operands.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    explicit RatInterval(const Rat& v) : lo(v), hi(v) {}
    RatInterval(const Rat& l, const Rat& h) : lo(l), hi(h) {
        if (lo > hi) throw invariant_error("interval endpoints out of order");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

inline RatInterval operator+(const RatInterval& a, const Rat& s) { return {a.lo + s, a.hi + s}; }
inline RatInterval operator-(const RatInterval& a, const Rat& s) { return {a.lo - s, a.hi - s}; }
inline RatInterval operator+(const Rat& s, const RatInterval& a) { return a + s; }
inline RatInterval operator-(const Rat& s, const RatInterval& a) { return {s - a.hi, s - a.lo}; }

inline RatInterval operator*(const RatInterval& a, const Rat& s) {
    if (s >= 0) return {a.lo * s, a.hi * s};
    return {a.hi * s, a.lo * s};
}

inline RatInterval operator*(const Rat& s, const RatInterval& a) { return a * s; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    Rat lo = c1, hi = c1;
    for (const Rat* c : {&c2, &c3, &c4}) {
        if (*c < lo) lo = *c;
        if (*c > hi) hi = *c;
    }
    return {lo, hi};
}

inline RatInterval operator/(const RatInterval& a, const Rat& s) {
    if (s == 0) throw precondition_error("interval division by zero");
    if (s > 0) return {a.lo / s, a.hi / s};
    return {a.hi / s, a.lo / s};
}

inline RatInterval operator/(const RatInterval& a, const RatInterval& b) {
    if (b.contains_zero()) throw precondition_error("interval division by enclosure of zero");
    return a * RatInterval(1 / b.hi, 1 / b.lo);
}

inline RatInterval abs_interval(const RatInterval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    Rat m = -a.lo;
    if (a.hi > m) m = a.hi;
    return {Rat(0), m};
}

inline RatInterval hull(const RatInterval& a, const RatInterval& b) {
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

inline std::optional<RatInterval> intersect(const RatInterval& a, const RatInterval& b) {
    Rat lo = a.lo > b.lo ? a.lo : b.lo;
    Rat hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo > hi) return std::nullopt;
    return RatInterval{lo, hi};
}

// Certified order: definite answer only when the enclosures separate.
inline std::optional<bool> certified_lt(const RatInterval& a, const RatInterval& b) {
    if (a.hi < b.lo) return true;
    if (a.lo >= b.hi) return false;
    return std::nullopt;
}

inline std::optional<bool> certified_le(const RatInterval& a, const RatInterval& b) {
    if (a.hi <= b.lo) return true;
    if (a.lo > b.hi) return false;
    return std::nullopt;
}

inline std::optional<bool> certified_lt(const RatInterval& a, const Rat& b) {
    return certified_lt(a, RatInterval(b));
}

inline std::optional<bool> certified_lt(const Rat& a, const RatInterval& b) {
    return certified_lt(RatInterval(a), b);
}

inline std::string interval_str(const RatInterval& a) {
    return "[" + rat_str(a.lo) + ", " + rat_str(a.hi) + "]";
}

} // namespace diolab
