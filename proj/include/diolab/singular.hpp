#pragma once

#include <vector>

#include "diolab/cf.hpp"

namespace diolab {

// Dyadic solvability profile of ||q alpha|| <= c 2^-ell with 0 < q <= 2^ell.
// Every decision routes through the convergent denominator owning the scale;
// q is never scanned.

// Largest k with q_k <= 2^ell (capped at the last usable level for finite
// expansions).
long convergent_block(Alpha& al, long ell);

bool dirichlet_solvable(Alpha& al, const Rat& c, long ell);

struct BlockBreakdown {
    long k = 0;              // owning convergent index
    long ell_lo = 0, ell_hi = 0;
    long bad_count = 0;
};

struct DensityReport {
    Rat c;
    long N = 0;
    long solvable_count = 0;
    Rat density;
    std::vector<long> bad_ell;
    std::vector<BlockBreakdown> blocks;
};

DensityReport singular_average_density(Alpha& al, const Rat& c, long N);

// Certified enclosures of (1/k) ln q_k and (1/k) sum_{i<=k} ln a_i, k = 1..K.
struct GrowthStats {
    long K = 0;
    std::vector<RatInterval> log_q_over_k;
    std::vector<RatInterval> avg_log_a;
};

GrowthStats growth_stats(Alpha& al, long K, unsigned prec = 64);

// (1/N) sum_{k=1}^N max(ln(eta a_k), 0).
RatInterval heaviness_stat(Alpha& al, const Rat& eta, long N,
                           unsigned prec = 64);

// Certified heaviness_stat <= delta.
bool heaviness_at_most(Alpha& al, const Rat& delta, const Rat& eta, long N);

// Scale X = q_{k+1} - 1 at which no 0 < q <= X reaches ||q alpha|| <= c / X,
// certified via min_{0<q<q_{k+1}} ||q alpha|| = ||q_k alpha||. Throws
// precondition_error when that scale is solvable for this c.
Int no_singular_witness(Alpha& al, const Rat& c, long k);

} // namespace diolab
