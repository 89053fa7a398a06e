#pragma once

#include <algorithm>
#include <mutex>
#include <optional>
#include <vector>

#include "diolab/config.hpp"
#include "diolab/interval.hpp"
#include "diolab/real_spec.hpp"

namespace diolab {

// Continued fraction engine. Holds the lazily extended convergent tables for
// one number and serves certified enclosures of alpha, of the convergent
// errors D_k = |q_k alpha - p_k|, and of orbit quantities frac(n alpha),
// ||n alpha||, ||n alpha - x||. Table extension is serialized; all queries are
// safe to run from multiple threads.
class Alpha {
public:
    explicit Alpha(RealNumberSpec spec, Config cfg = Config::from_env());

    const Config& config() const { return cfg_; }
    const RealNumberSpec& spec() const { return spec_; }

    Int a(long k) const; // k >= 0
    Int p(long k) const; // k >= -1, p(-1) = 1
    Int q(long k) const; // k >= -1, q(-1) = 0
    Rat convergent(long k) const;

    // Deepest usable level: finite expansions end, rules and quadratics run
    // to the configured depth cap.
    long last_level() const;

    // alpha bracketed by consecutive convergents at the given depth. Finite
    // expansions collapse to an exact point once depth reaches the end.
    RatInterval enclosure(long depth) const;

    // D(-1) = 1 exactly; D_k shrinks like 1/q_{k+1}. depth > k required.
    RatInterval D(long k, long depth) const;
    RatInterval D(long k) const;

    // frac(n alpha) as one interval inside [0, 1), escalating internally
    // until the wrap is resolved. n may be any nonzero integer.
    RatInterval orbit_point(const Int& n) const;
    std::optional<RatInterval> orbit_point_at(const Int& n, long depth) const;

    // Distance from n alpha, resp. n alpha - x, to the nearest integer.
    RatInterval qdist(const Int& n, long depth) const;
    RatInterval qdist(const Int& n) const;
    RatInterval inhom_dist(const Int& n, const Rat& x, long depth) const;

    // First depth whose convergent product dominates n^2, the scale at which
    // ||n alpha|| enclosures become meaningful.
    long depth_for(const Int& n) const;
    long max_usable_depth() const;

    // Runs f at increasing depth until it yields a value.
    // f: long depth -> std::optional<T>.
    template <class F>
    auto resolve_value(F&& f, long depth0) const ->
        typename std::invoke_result_t<F, long>::value_type {
        long d = std::max(depth0, 1L);
        long cap = max_usable_depth();
        d = std::min(d, cap);
        for (int round = 0;; ++round) {
            if (auto v = f(d)) return *v;
            if (d >= cap || round >= cfg_.escalation_rounds)
                throw precision_error("comparison not separated within escalation budget");
            d = std::min(cap, d * 2);
        }
    }

    // Runs f at increasing depth until it yields a definite answer.
    // f: long depth -> std::optional<bool>.
    template <class F>
    bool resolve(F&& f, long depth0) const {
        return resolve_value(std::forward<F>(f), depth0);
    }

private:
    void ensure(long k) const; // extend tables through index k

    RealNumberSpec spec_;
    Config cfg_;
    mutable std::mutex mu_;
    mutable std::vector<Int> a_, p_, q_; // index k >= 0
};

// Exact range of the distance-to-nearest-integer map over an interval.
RatInterval fold_to_nearest(const RatInterval& t);

} // namespace diolab
